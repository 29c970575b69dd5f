package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing session records.
 */
public class SessionService {

    private String token;
    private String user;
    private Date expiry;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the token of this session.
     *
     * @return the token of this session
     */
    public String getToken() {
        return token;
    }

    /**
     * Returns the user of this session.
     *
     * @return the user of this session
     */
    public String getUser() {
        return user;
    }

    /**
     * Returns the expiry of this session.
     *
     * @return the expiry of this session
     */
    public Date getExpiry() {
        return expiry;
    }

    /**
     * Sets the token of this session.
     *
     * @param token the new token of this session
     */
    public void setToken(String token) {
        // store the new value of the field
        this.token = token;
    }

    /**
     * Sets the user of this session.
     *
     * @param user the new user of this session
     */
    public void setUser(String user) {
        // store the new value of the field
        this.user = user;
    }

    /**
     * Sets the expiry of this session.
     *
     * @param expiry the new expiry of this session
     */
    public void setExpiry(Date expiry) {
        // store the new value of the field
        this.expiry = expiry;
    }

    /**
     * Finds the session with the given identifier.
     * Returns null if no session exists with this identifier.
     *
     * @param id the identifier of the session
     * @return the matching session or null
     */
    public Session findSessionById(long id) {
        // look up the session in the local cache first
        Session cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given session is valid.
     *
     * @param value the session to check
     * @return true if the session is valid, false otherwise
     */
    public boolean isValid(Session value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the token of the session must not be missing
        return value.getToken() != null;
    }

    /**
     * Returns a string representation of this session.
     */
    @Override
    public String toString() {
        return "Session[" + token + "]";
    }

    /**
     * Computes the hash code of this session from its token and user.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(token, user);
    }

    /**
     * Counts the number of sessions that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching sessions
     */
    public int countSessions(Predicate<Session> filter) {
        int total = 0;
        // iterate over all known sessions
        for (Session item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the session with the given identifier from the cache.
     *
     * @param id the identifier of the session to remove
     */
    public void removeSession(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given session to the repository.
     *
     * @param value the session to save
     */
    public void save(Session value) {
        // TODO: handle concurrent updates of the same session
        repository.store(value);
        // update the cache with the saved session
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached sessions.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached session at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all sessions from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded sessions
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the session
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this session to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/session for the format.</p>
     *
     * @return the JSON representation of this session
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
     * Compares this session with the given session by token.
     *
     * @param other the session to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Session other) {
        // compare the token of both sessions
        return String.valueOf(token).compareTo(String.valueOf(other.token));
    }

    /**
     * Returns the creation date of this session.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this session
     */
    public Date getCreated() {
        return created;
    }
}
