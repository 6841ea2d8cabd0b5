package tools;

public class Pair<A, B> {
  private final A left;
  private final B right;

  public Pair(A left, B right) {
    this.left = left;
    this.right = right;
  }

  public A left() {
    return left;
  }

  public B right() {
    return right;
  }
}

class PairUtil {
  static <T> Pair<T, T> twin(T value) {
    return new Pair<>(value, value);
  }
}
