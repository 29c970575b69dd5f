package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing account records.
 */
public class AccountService {

    private String owner;
    private BigDecimal balance;
    private String currency;
    private Date created;
    private long[] data = new long[16];

    /**
     * Returns the owner of this account.
     *
     * @return the owner of this account
     */
    public String getOwner() {
        return owner;
    }

    /**
     * Returns the balance of this account.
     *
     * @return the balance of this account
     */
    public BigDecimal getBalance() {
        return balance;
    }

    /**
     * Returns the currency of this account.
     *
     * @return the currency of this account
     */
    public String getCurrency() {
        return currency;
    }

    /**
     * Sets the owner of this account.
     *
     * @param owner the new owner of this account
     */
    public void setOwner(String owner) {
        // store the new value of the field
        this.owner = owner;
    }

    /**
     * Sets the balance of this account.
     *
     * @param balance the new balance of this account
     */
    public void setBalance(BigDecimal balance) {
        // store the new value of the field
        this.balance = balance;
    }

    /**
     * Sets the currency of this account.
     *
     * @param currency the new currency of this account
     */
    public void setCurrency(String currency) {
        // store the new value of the field
        this.currency = currency;
    }

    /**
     * Finds the account with the given identifier.
     * Returns null if no account exists with this identifier.
     *
     * @param id the identifier of the account
     * @return the matching account or null
     */
    public Account findAccountById(long id) {
        // look up the account in the local cache first
        Account cached = cache.get(id);
        if (cached != null) {
            return cached;
        }

        // fall back to the repository if it is not cached
        return repository.load(id);
    }

    /**
     * Checks whether the given account is valid.
     *
     * @param value the account to check
     * @return true if the account is valid, false otherwise
     */
    public boolean isValid(Account value) {
        // reject null input early
        if (value == null) {
            return false;
        }
        // the owner of the account must not be missing
        return value.getOwner() != null;
    }

    /**
     * Returns a string representation of this account.
     */
    @Override
    public String toString() {
        return "Account[" + owner + "]";
    }

    /**
     * Computes the hash code of this account from its owner and balance.
     */
    @Override
    public int hashCode() {
        // combine the hash codes of the fields
        return Objects.hash(owner, balance);
    }

    /**
     * Counts the number of accounts that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching accounts
     */
    public int countAccounts(Predicate<Account> filter) {
        int total = 0;
        // iterate over all known accounts
        for (Account item : items) {
            if (filter.test(item)) {
                total++;
            }
        }
        return total;
    }

    /**
     * Removes the account with the given identifier from the cache.
     *
     * @param id the identifier of the account to remove
     */
    public void removeAccount(long id) {
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }

    /**
     * Saves the given account to the repository.
     *
     * @param value the account to save
     */
    public void save(Account value) {
        // TODO: handle concurrent updates of the same account
        repository.store(value);
        // update the cache with the saved account
        cache.put(value.getId(), value);
    }

    /**
     * Clears all cached accounts.
     */
    public void clearCache() {
        int size = cache.size();

        // drop every cached account at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }

    /**
     * Reloads all accounts from the repository.
     */
    public void reload() {
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded accounts
        index.rebuild(items);
    }

    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }

    private long nextId() {
        // generate a new identifier for the account
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }

    /**
     * Converts this account to its JSON form using {@link JsonWriter}.
     * <p>See https://example.com/docs/account for the format.</p>
     *
     * @return the JSON representation of this account
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
     * Compares this account with the given account by owner.
     *
     * @param other the account to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo(Account other) {
        // compare the owner of both accounts
        return String.valueOf(owner).compareTo(String.valueOf(other.owner));
    }

    /**
     * Returns the creation date of this account.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this account
     */
    public Date getCreated() {
        return created;
    }

    /**
     * Builds the full monthly report for all accounts.
     *
     * @return the report lines
     */
    public List<String> buildMonthlyReport() {
        List<String> lines = new ArrayList<>();
        // collect the header of the report
        lines.add("Monthly report for " + month + " of " + year + " generated at " + now());
        for (Account account : accounts) {
            String owner = account.getOwner();
            BigDecimal balance = account.getBalance();
            String currency = account.getCurrency();
            if (balance == null || balance.signum() == 0) {
                lines.add(owner + ": no balance recorded for this month in " + currency);
                continue;
            }
            if (balance.signum() < 0) {
                lines.add(owner + ": negative balance of " + balance + " " + currency + " needs review");
                alerts.add(new Alert(owner, balance, currency, AlertLevel.HIGH, "negative balance"));
                continue;
            }
            lines.add(owner + ": balance of " + balance + " " + currency + " is within the expected range");
            totals.merge(currency, balance, BigDecimal::add);
        }
        for (Map.Entry<String, BigDecimal> entry : totals.entrySet()) {
            lines.add("total in " + entry.getKey() + ": " + entry.getValue() + " across all accounts");
        }
        lines.add("end of report for " + month + " of " + year + " with " + alerts.size() + " alerts");
        return lines;
    }
}
