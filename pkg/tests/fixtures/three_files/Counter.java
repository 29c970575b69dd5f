package demo;

public class Counter {
    private int count;

    /**
     * Returns the current count.
     */
    public int get() {
        return count;
    }

    public void increment() {
        // add one to the running total
        count++;
    }
}
