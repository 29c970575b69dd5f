package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing order records.
 */
public class OrderService {

    private String number;
    private BigDecimal total;
    private String status;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the number of this order.
     *
     * @return the number of this order
     */
    public String getNumber() {
        return number;
    }

    /**
     * Returns the total of this order.
     *
     * @return the total of this order
     */
    public BigDecimal getTotal() {
        return total;
    }

    /**
     * Returns the status of this order.
     *
     * @return the status of this order
     */
    public String getStatus() {
        return status;
    }

    /**
     * Sets the number of this order.
     *
     * @param number the new number of this order
     */
    public void setNumber(String number) {
        // store the new value of the field
        this.number = number;
    }

    /**
     * Sets the total of this order.
     *
     * @param total the new total of this order
     */
    public void setTotal(BigDecimal total) {
        // store the new value of the field
        this.total = total;
    }

    /**
     * Sets the status of this order.
     *
     * @param status the new status of this order
     */
    public void setStatus(String status) {
        // store the new value of the field
        this.status = status;
    }

    /**
     * Finds the order with the given identifier.
     * Returns null if no order exists with this identifier.
     *
     * @param id the identifier of the order
     * @return the matching order or null
     */
    public Order findOrderById(long id) {
        // look up the order in the local cache first
        Order cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given order is valid.
     *
     * @param value the order to check
     * @return true if the order is valid, false otherwise
     */
    public boolean isValid(Order value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the number of the order must not be missing
        return value.getNumber() != null;
    }

    /**
     * Returns a string representation of this order.
     */
    @Override
    public String toString() {
        return "Order[" + number + "]";
    }

    /**
     * Computes the hash code of this order from its number and total.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(number, total);
    }

    /**
     * Counts the number of orders that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching orders
     */
    public int countOrders(Predicate<Order> filter) {
        int total = 0;
        // iterate over all known orders
        for (Order item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the order with the given identifier from the cache.
     *
     * @param id the identifier of the order to remove
     */
    public void removeOrder(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given order to the repository.
     *
     * @param value the order to save
     */
    public void save(Order value) {
        // TODO: handle concurrent updates of the same order
        repository.store(value);
        // update the cache with the saved order
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached orders.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached order at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all orders from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded orders
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the order
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this order to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/order for the format.</p>
     *
     * @return the JSON representation of this order
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
     * Compares this order with the given order by number.
     *
     * @param other the order to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Order other) {
        // compare the number of both orders
        return String.valueOf(number).compareTo(String.valueOf(other.number));
    }

    /**
     * Returns the creation date of this order.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this order
     */
    public Date getCreated() {
        return created;
    }
}
