"""Regenerate the bundled Java mini-corpus under src/commentcomplete/data/minicorpus."""

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "commentcomplete" / "data" / "minicorpus"

ENTITIES = [
    ("Account", [("owner", "String"), ("balance", "BigDecimal"), ("currency", "String")]),
    ("Customer", [("name", "String"), ("email", "String"), ("address", "String")]),
    ("Order", [("number", "String"), ("total", "BigDecimal"), ("status", "String")]),
    ("Product", [("title", "String"), ("price", "BigDecimal"), ("category", "String")]),
    ("Invoice", [("number", "String"), ("amount", "BigDecimal"), ("dueDate", "Date")]),
    ("Session", [("token", "String"), ("user", "String"), ("expiry", "Date")]),
    ("Shipment", [("carrier", "String"), ("weight", "double"), ("destination", "String")]),
    ("Ticket", [("subject", "String"), ("priority", "int"), ("assignee", "String")]),
    ("Employee", [("name", "String"), ("salary", "BigDecimal"), ("department", "String")]),
]


def words(ident: str) -> str:
    out = []
    for ch in ident:
        if ch.isupper() and out:
            out.append(" ")
        out.append(ch.lower())
    return "".join(out)


def cap(s: str) -> str:
    return s[0].upper() + s[1:]


def entity_methods(name, fields):
    e = name.lower()
    (f0, t0), (f1, t1), _ = fields
    out = []
    for f, t in fields:
        w = words(f)
        out.append(f"""
    /**
     * Returns the {w} of this {e}.
     *
     * @return the {w} of this {e}
     */
    public {t} get{cap(f)}() {{
        return {f};
    }}""")
    for f, t in fields:
        w = words(f)
        out.append(f"""
    /**
     * Sets the {w} of this {e}.
     *
     * @param {f} the new {w} of this {e}
     */
    public void set{cap(f)}({t} {f}) {{
        // store the new value of the field
        this.{f} = {f};
    }}""")
    out.append(f"""
    /**
     * Finds the {e} with the given identifier.
     * Returns null if no {e} exists with this identifier.
     *
     * @param id the identifier of the {e}
     * @return the matching {e} or null
     */
    public {name} find{name}ById(long id) {{
        // look up the {e} in the local cache first
        {name} cached = cache.get(id);
        if (cached != null) {{
            return cached;
        }}

        // fall back to the repository if it is not cached
        return repository.load(id);
    }}""")
    out.append(f"""
    /**
     * Checks whether the given {e} is valid.
     *
     * @param value the {e} to check
     * @return true if the {e} is valid, false otherwise
     */
    public boolean isValid({name} value) {{
        // reject null input early
        if (value == null) {{
            return false;
        }}
        // the {words(f0)} of the {e} must not be missing
        return value.get{cap(f0)}() != null;
    }}""")
    out.append(f"""
    /**
     * Returns a string representation of this {e}.
     */
    @Override
    public String toString() {{
        return "{name}[" + {f0} + "]";
    }}""")
    out.append(f"""
    /**
     * Computes the hash code of this {e} from its {words(f0)} and {words(f1)}.
     */
    @Override
    public int hashCode() {{
        // combine the hash codes of the fields
        return Objects.hash({f0}, {f1});
    }}""")
    out.append(f"""
    /**
     * Counts the number of {e}s that match the given filter.
     *
     * @param filter the filter to apply
     * @return the number of matching {e}s
     */
    public int count{name}s(Predicate<{name}> filter) {{
        int total = 0;
        // iterate over all known {e}s
        for ({name} item : items) {{
            if (filter.test(item)) {{
                total++;
            }}
        }}
        return total;
    }}""")
    out.append(f"""
    /**
     * Removes the {e} with the given identifier from the cache.
     *
     * @param id the identifier of the {e} to remove
     */
    public void remove{name}(long id) {{
        // remove the entry from the cache
        cache.remove(id);
        // notify all registered listeners about the change
        listeners.forEach(l -> l.onRemoved(id));
    }}""")
    out.append(f"""
    /**
     * Saves the given {e} to the repository.
     *
     * @param value the {e} to save
     */
    public void save({name} value) {{
        // TODO: handle concurrent updates of the same {e}
        repository.store(value);
        // update the cache with the saved {e}
        cache.put(value.getId(), value);
    }}""")
    out.append(f"""
    /**
     * Clears all cached {e}s.
     */
    public void clearCache() {{
        int size = cache.size();

        // drop every cached {e} at once

        cache.clear();
        log.debug("cleared " + size + " entries");
    }}""")
    out.append(f"""
    /**
     * Reloads all {e}s from the repository.
     */
    public void reload() {{
        // items = repository.loadAll(index.version());
        items = repository.loadAll();
        // rebuild the index of all loaded {e}s
        index.rebuild(items);
    }}""")
    out.append("""
    private void ensureCapacity(int size) {
        // grow the backing array when it is full
        if (size > data.length) {
            data = Arrays.copyOf(data, size * 2);
        }
    }""")
    out.append(f"""
    private long nextId() {{
        // generate a new identifier for the {e}
        // using the shared sequence counter
        return sequence.incrementAndGet();
    }}""")
    out.append(f"""
    /**
     * Converts this {e} to its JSON form using {{@link JsonWriter}}.
     * <p>See https://example.com/docs/{e} for the format.</p>
     *
     * @return the JSON representation of this {e}
     */
    public String toJson() {{
        return JsonWriter.write(this);
    }}""")
    out.append("""
    public boolean isEmpty() {
        return items.isEmpty();
    }""")
    out.append("""
    /** Size. */
    public int size() {
        return items.size();
    }""")
    out.append(f"""
    /**
     * Compares this {e} with the given {e} by {words(f0)}.
     *
     * @param other the {e} to compare with
     * @return a negative number, zero or a positive number
     */
    public int compareTo({name} other) {{
        // compare the {words(f0)} of both {e}s
        return String.valueOf({f0}).compareTo(String.valueOf(other.{f0}));
    }}""")
    out.append(f"""
    /**
     * Returns the creation date of this {e}.
     * Added on 2018-11-02 by the data team.
     *
     * @return the creation date of this {e}
     */
    public Date getCreated() {{
        return created;
    }}""")
    return out


EXTRA = [
    """
    /**
     * Returns the résumé of the current employee.
     *
     * @return the résumé text
     */
    public String getResume() {
        return resume;
    }""",
    """
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
    }""",
]


def render(name, fields, methods):
    decls = "\n".join(f"    private {t} {f};" for f, t in fields)
    body = "\n".join(methods)
    return f"""package com.example.store;

import java.math.BigDecimal;
import java.util.*;
import java.util.function.Predicate;

/**
 * Service managing {name.lower()} records.
 */
public class {name}Service {{

{decls}
    private Date created;
    private long[] data = new long[16];
{body}
}}
"""


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.java"):
        old.unlink()
    total = 0
    for name, fields in ENTITIES:
        methods = entity_methods(name, fields)
        if name == "Employee":
            methods.append(EXTRA[0])
        if name == "Account":
            methods.append(EXTRA[1])
        total += len(methods)
        (OUT / f"{name}Service.java").write_text(render(name, fields, methods), encoding="utf-8")
    print(f"wrote {total} methods to {OUT}")


if __name__ == "__main__":
    main()
