package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing shipment records.
 */
public class ShipmentService {

    private String carrier;
    private double weight;
    private String destination;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the carrier of this shipment.
     *
     * @return the carrier of this shipment
     */
    public String getCarrier() {
        return carrier;
    }

    /**
     * Returns the weight of this shipment.
     *
     * @return the weight of this shipment
     */
    public double getWeight() {
        return weight;
    }

    /**
     * Returns the destination of this shipment.
     *
     * @return the destination of this shipment
     */
    public String getDestination() {
        return destination;
    }

    /**
     * Sets the carrier of this shipment.
     *
     * @param carrier the new carrier of this shipment
     */
    public void setCarrier(String carrier) {
        // store the new value of the field
        this.carrier = carrier;
    }

    /**
     * Sets the weight of this shipment.
     *
     * @param weight the new weight of this shipment
     */
    public void setWeight(double weight) {
        // store the new value of the field
        this.weight = weight;
    }

    /**
     * Sets the destination of this shipment.
     *
     * @param destination the new destination of this shipment
     */
    public void setDestination(String destination) {
        // store the new value of the field
        this.destination = destination;
    }

    /**
     * Finds the shipment with the given identifier.
     * Returns null if no shipment exists with this identifier.
     *
     * @param id the identifier of the shipment
     * @return the matching shipment or null
     */
    public Shipment findShipmentById(long id) {
        // look up the shipment in the local cache first
        Shipment cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given shipment is valid.
     *
     * @param value the shipment to check
     * @return true if the shipment is valid, false otherwise
     */
    public boolean isValid(Shipment value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the carrier of the shipment must not be missing
        return value.getCarrier() != null;
    }

    /**
     * Returns a string representation of this shipment.
     */
    @Override
    public String toString() {
        return "Shipment[" + carrier + "]";
    }

    /**
     * Computes the hash code of this shipment from its carrier and weight.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(carrier, weight);
    }

    /**
     * Counts the number of shipments that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching shipments
     */
    public int countShipments(Predicate<Shipment> filter) {
        int total = 0;
        // iterate over all known shipments
        for (Shipment item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the shipment with the given identifier from the cache.
     *
     * @param id the identifier of the shipment to remove
     */
    public void removeShipment(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given shipment to the repository.
     *
     * @param value the shipment to save
     */
    public void save(Shipment value) {
        // TODO: handle concurrent updates of the same shipment
        repository.store(value);
        // update the cache with the saved shipment
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached shipments.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached shipment at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all shipments from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded shipments
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the shipment
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this shipment to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/shipment for the format.</p>
     *
     * @return the JSON representation of this shipment
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
     * Compares this shipment with the given shipment by carrier.
     *
     * @param other the shipment to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Shipment other) {
        // compare the carrier of both shipments
        return String.valueOf(carrier).compareTo(String.valueOf(other.carrier));
    }

    /**
     * Returns the creation date of this shipment.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this shipment
     */
    public Date getCreated() {
        return created;
    }
}
