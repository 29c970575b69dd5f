package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing ticket records.
 */
public class TicketService {

    private String subject;
    private int priority;
    private String assignee;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the subject of this ticket.
     *
     * @return the subject of this ticket
     */
    public String getSubject() {
        return subject;
    }

    /**
     * Returns the priority of this ticket.
     *
     * @return the priority of this ticket
     */
    public int getPriority() {
        return priority;
    }

    /**
     * Returns the assignee of this ticket.
     *
     * @return the assignee of this ticket
     */
    public String getAssignee() {
        return assignee;
    }

    /**
     * Sets the subject of this ticket.
     *
     * @param subject the new subject of this ticket
     */
    public void setSubject(String subject) {
        // store the new value of the field
        this.subject = subject;
    }

    /**
     * Sets the priority of this ticket.
     *
     * @param priority the new priority of this ticket
     */
    public void setPriority(int priority) {
        // store the new value of the field
        this.priority = priority;
    }

    /**
     * Sets the assignee of this ticket.
     *
     * @param assignee the new assignee of this ticket
     */
    public void setAssignee(String assignee) {
        // store the new value of the field
        this.assignee = assignee;
    }

    /**
     * Finds the ticket with the given identifier.
     * Returns null if no ticket exists with this identifier.
     *
     * @param id the identifier of the ticket
     * @return the matching ticket or null
     */
    public Ticket findTicketById(long id) {
        // look up the ticket in the local cache first
        Ticket cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given ticket is valid.
     *
     * @param value the ticket to check
     * @return true if the ticket is valid, false otherwise
     */
    public boolean isValid(Ticket value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the subject of the ticket must not be missing
        return value.getSubject() != null;
    }

    /**
     * Returns a string representation of this ticket.
     */
    @Override
    public String toString() {
        return "Ticket[" + subject + "]";
    }

    /**
     * Computes the hash code of this ticket from its subject and priority.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(subject, priority);
    }

    /**
     * Counts the number of tickets that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching tickets
     */
    public int countTickets(Predicate<Ticket> filter) {
        int total = 0;
        // iterate over all known tickets
        for (Ticket item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the ticket with the given identifier from the cache.
     *
     * @param id the identifier of the ticket to remove
     */
    public void removeTicket(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given ticket to the repository.
     *
     * @param value the ticket to save
     */
    public void save(Ticket value) {
        // TODO: handle concurrent updates of the same ticket
        repository.store(value);
        // update the cache with the saved ticket
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached tickets.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached ticket at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all tickets from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded tickets
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the ticket
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this ticket to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/ticket for the format.</p>
     *
     * @return the JSON representation of this ticket
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
     * Compares this ticket with the given ticket by subject.
     *
     * @param other the ticket to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Ticket other) {
        // compare the subject of both tickets
        return String.valueOf(subject).compareTo(String.valueOf(other.subject));
    }

    /**
     * Returns the creation date of this ticket.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this ticket
     */
    public Date getCreated() {
        return created;
    }
}
