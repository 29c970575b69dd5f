package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing employee records.
 */
public class EmployeeService {

    private String name;
    private BigDecimal salary;
    private String department;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the name of this employee.
     *
     * @return the name of this employee
     */
    public String getName() {
        return name;
    }

    /**
     * Returns the salary of this employee.
     *
     * @return the salary of this employee
     */
    public BigDecimal getSalary() {
        return salary;
    }

    /**
     * Returns the department of this employee.
     *
     * @return the department of this employee
     */
    public String getDepartment() {
        return department;
    }

    /**
     * Sets the name of this employee.
     *
     * @param name the new name of this employee
     */
    public void setName(String name) {
        // store the new value of the field
        this.name = name;
    }

    /**
     * Sets the salary of this employee.
     *
     * @param salary the new salary of this employee
     */
    public void setSalary(BigDecimal salary) {
        // store the new value of the field
        this.salary = salary;
    }

    /**
     * Sets the department of this employee.
     *
     * @param department the new department of this employee
     */
    public void setDepartment(String department) {
        // store the new value of the field
        this.department = department;
    }

    /**
     * Finds the employee with the given identifier.
     * Returns null if no employee exists with this identifier.
     *
     * @param id the identifier of the employee
     * @return the matching employee or null
     */
    public Employee findEmployeeById(long id) {
        // look up the employee in the local cache first
        Employee cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given employee is valid.
     *
     * @param value the employee to check
     * @return true if the employee is valid, false otherwise
     */
    public boolean isValid(Employee value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the name of the employee must not be missing
        return value.getName() != null;
    }

    /**
     * Returns a string representation of this employee.
     */
    @Override
    public String toString() {
        return "Employee[" + name + "]";
    }

    /**
     * Computes the hash code of this employee from its name and salary.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(name, salary);
    }

    /**
     * Counts the number of employees that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching employees
     */
    public int countEmployees(Predicate<Employee> filter) {
        int total = 0;
        // iterate over all known employees
        for (Employee item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the employee with the given identifier from the cache.
     *
     * @param id the identifier of the employee to remove
     */
    public void removeEmployee(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given employee to the repository.
     *
     * @param value the employee to save
     */
    public void save(Employee value) {
        // TODO: handle concurrent updates of the same employee
        repository.store(value);
        // update the cache with the saved employee
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached employees.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached employee at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all employees from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded employees
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the employee
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this employee to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/employee for the format.</p>
     *
     * @return the JSON representation of this employee
     */
    public String toJson() {
        return JsonWriter.write(this);
    }

    public boolean isEmpty() {
        return items.isEmpty();
    }

    /** Size. */
    public int size() {
        return items.size();
    }

    /**
     * Compares this employee with the given employee by name.
     *
     * @param other the employee to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Employee other) {
        // compare the name of both employees
        return String.valueOf(name).compareTo(String.valueOf(other.name));
    }

    /**
     * Returns the creation date of this employee.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this employee
     */
    public Date getCreated() {
        return created;
    }

    /**
     * Returns the résumé of the current employee.
     *
     * @return the résumé text
     */
    public String getResume() {
        return resume;
    }
}
