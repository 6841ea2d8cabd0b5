package org.beta;

public class Counter {
  private int count;
  private int step = 1;

  public Counter() {}

  public Counter(int step) {
    this.step = step;
  }

  public void tick() {
    count += step;
  }

  public int value() {
    return count;
  }

  public void reset() {
    count = 0;
  }

  public String describe() {
    switch (step) {
      case 1:
        return "unit";
      case 2:
        return "double";
      default:
        return "step " + step;
    }
  }
}
