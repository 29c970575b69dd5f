package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing invoice records.
 */
public class InvoiceService {

    private String number;
    private BigDecimal amount;
    private Date dueDate;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the number of this invoice.
     *
     * @return the number of this invoice
     */
    public String getNumber() {
        return number;
    }

    /**
     * Returns the amount of this invoice.
     *
     * @return the amount of this invoice
     */
    public BigDecimal getAmount() {
        return amount;
    }

    /**
     * Returns the due date of this invoice.
     *
     * @return the due date of this invoice
     */
    public Date getDueDate() {
        return dueDate;
    }

    /**
     * Sets the number of this invoice.
     *
     * @param number the new number of this invoice
     */
    public void setNumber(String number) {
        // store the new value of the field
        this.number = number;
    }

    /**
     * Sets the amount of this invoice.
     *
     * @param amount the new amount of this invoice
     */
    public void setAmount(BigDecimal amount) {
        // store the new value of the field
        this.amount = amount;
    }

    /**
     * Sets the due date of this invoice.
     *
     * @param dueDate the new due date of this invoice
     */
    public void setDueDate(Date dueDate) {
        // store the new value of the field
        this.dueDate = dueDate;
    }

    /**
     * Finds the invoice with the given identifier.
     * Returns null if no invoice exists with this identifier.
     *
     * @param id the identifier of the invoice
     * @return the matching invoice or null
     */
    public Invoice findInvoiceById(long id) {
        // look up the invoice in the local cache first
        Invoice cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given invoice is valid.
     *
     * @param value the invoice to check
     * @return true if the invoice is valid, false otherwise
     */
    public boolean isValid(Invoice value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the number of the invoice must not be missing
        return value.getNumber() != null;
    }

    /**
     * Returns a string representation of this invoice.
     */
    @Override
    public String toString() {
        return "Invoice[" + number + "]";
    }

    /**
     * Computes the hash code of this invoice from its number and amount.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(number, amount);
    }

    /**
     * Counts the number of invoices that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching invoices
     */
    public int countInvoices(Predicate<Invoice> filter) {
        int total = 0;
        // iterate over all known invoices
        for (Invoice item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the invoice with the given identifier from the cache.
     *
     * @param id the identifier of the invoice to remove
     */
    public void removeInvoice(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given invoice to the repository.
     *
     * @param value the invoice to save
     */
    public void save(Invoice value) {
        // TODO: handle concurrent updates of the same invoice
        repository.store(value);
        // update the cache with the saved invoice
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached invoices.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached invoice at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all invoices from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded invoices
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the invoice
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this invoice to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/invoice for the format.</p>
     *
     * @return the JSON representation of this invoice
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
     * Compares this invoice with the given invoice by number.
     *
     * @param other the invoice to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Invoice other) {
        // compare the number of both invoices
        return String.valueOf(number).compareTo(String.valueOf(other.number));
    }

    /**
     * Returns the creation date of this invoice.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this invoice
     */
    public Date getCreated() {
        return created;
    }
}
