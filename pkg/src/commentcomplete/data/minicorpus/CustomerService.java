package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing customer records.
 */
public class CustomerService {

    private String name;
    private String email;
    private String address;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the name of this customer.
     *
     * @return the name of this customer
     */
    public String getName() {
        return name;
    }

    /**
     * Returns the email of this customer.
     *
     * @return the email of this customer
     */
    public String getEmail() {
        return email;
    }

    /**
     * Returns the address of this customer.
     *
     * @return the address of this customer
     */
    public String getAddress() {
        return address;
    }

    /**
     * Sets the name of this customer.
     *
     * @param name the new name of this customer
     */
    public void setName(String name) {
        // store the new value of the field
        this.name = name;
    }

    /**
     * Sets the email of this customer.
     *
     * @param email the new email of this customer
     */
    public void setEmail(String email) {
        // store the new value of the field
        this.email = email;
    }

    /**
     * Sets the address of this customer.
     *
     * @param address the new address of this customer
     */
    public void setAddress(String address) {
        // store the new value of the field
        this.address = address;
    }

    /**
     * Finds the customer with the given identifier.
     * Returns null if no customer exists with this identifier.
     *
     * @param id the identifier of the customer
     * @return the matching customer or null
     */
    public Customer findCustomerById(long id) {
        // look up the customer in the local cache first
        Customer cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given customer is valid.
     *
     * @param value the customer to check
     * @return true if the customer is valid, false otherwise
     */
    public boolean isValid(Customer value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the name of the customer must not be missing
        return value.getName() != null;
    }

    /**
     * Returns a string representation of this customer.
     */
    @Override
    public String toString() {
        return "Customer[" + name + "]";
    }

    /**
     * Computes the hash code of this customer from its name and email.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(name, email);
    }

    /**
     * Counts the number of customers that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching customers
     */
    public int countCustomers(Predicate<Customer> filter) {
        int total = 0;
        // iterate over all known customers
        for (Customer item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the customer with the given identifier from the cache.
     *
     * @param id the identifier of the customer to remove
     */
    public void removeCustomer(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given customer to the repository.
     *
     * @param value the customer to save
     */
    public void save(Customer value) {
        // TODO: handle concurrent updates of the same customer
        repository.store(value);
        // update the cache with the saved customer
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached customers.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached customer at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all customers from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded customers
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the customer
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this customer to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/customer for the format.</p>
     *
     * @return the JSON representation of this customer
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
     * Compares this customer with the given customer by name.
     *
     * @param other the customer to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Customer other) {
        // compare the name of both customers
        return String.valueOf(name).compareTo(String.valueOf(other.name));
    }

    /**
     * Returns the creation date of this customer.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this customer
     */
    public Date getCreated() {
        return created;
    }
}
