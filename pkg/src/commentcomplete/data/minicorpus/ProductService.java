package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing product records.
 */
public class ProductService {

    private String title;
    private BigDecimal price;
    private String category;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the title of this product.
     *
     * @return the title of this product
     */
    public String getTitle() {
        return title;
    }

    /**
     * Returns the price of this product.
     *
     * @return the price of this product
     */
    public BigDecimal getPrice() {
        return price;
    }

    /**
     * Returns the category of this product.
     *
     * @return the category of this product
     */
    public String getCategory() {
        return category;
    }

    /**
     * Sets the title of this product.
     *
     * @param title the new title of this product
     */
    public void setTitle(String title) {
        // store the new value of the field
        this.title = title;
    }

    /**
     * Sets the price of this product.
     *
     * @param price the new price of this product
     */
    public void setPrice(BigDecimal price) {
        // store the new value of the field
        this.price = price;
    }

    /**
     * Sets the category of this product.
     *
     * @param category the new category of this product
     */
    public void setCategory(String category) {
        // store the new value of the field
        this.category = category;
    }

    /**
     * Finds the product with the given identifier.
     * Returns null if no product exists with this identifier.
     *
     * @param id the identifier of the product
     * @return the matching product or null
     */
    public Product findProductById(long id) {
        // look up the product in the local cache first
        Product cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given product is valid.
     *
     * @param value the product to check
     * @return true if the product is valid, false otherwise
     */
    public boolean isValid(Product value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the title of the product must not be missing
        return value.getTitle() != null;
    }

    /**
     * Returns a string representation of this product.
     */
    @Override
    public String toString() {
        return "Product[" + title + "]";
    }

    /**
     * Computes the hash code of this product from its title and price.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(title, price);
    }

    /**
     * Counts the number of products that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching products
     */
    public int countProducts(Predicate<Product> filter) {
        int total = 0;
        // iterate over all known products
        for (Product item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the product with the given identifier from the cache.
     *
     * @param id the identifier of the product to remove
     */
    public void removeProduct(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given product to the repository.
     *
     * @param value the product to save
     */
    public void save(Product value) {
        // TODO: handle concurrent updates of the same product
        repository.store(value);
        // update the cache with the saved product
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached products.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached product at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all products from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded products
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the product
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this product to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/product for the format.</p>
     *
     * @return the JSON representation of this product
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
     * Compares this product with the given product by title.
     *
     * @param other the product to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Product other) {
        // compare the title of both products
        return String.valueOf(title).compareTo(String.valueOf(other.title));
    }

    /**
     * Returns the creation date of this product.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this product
     */
    public Date getCreated() {
        return created;
    }
}
