package geo;

import geo.api.Shape;
import geo.shapes.Circle;
import java.util.ArrayList;
import java.util.List;

public class Canvas {
  private final List<Shape> shapes = new ArrayList<>();
  private String title = "untitled";
  int version;

  public Canvas add(Shape s) {
    synchronized (shapes) {
      shapes.add(s);
    }
    version++;
    return this;
  }

  public double coverage() {
    double sum = 0;
    int i = 0;
    do {
      sum += shapes.get(i).area();
      i++;
    } while (i < shapes.size());
    return sum;
  }

  public Circle biggestCircle() {
    Circle best = null;
    for (Shape s : shapes) {
      if (!(s instanceof Circle)) {
        continue;
      }
      Circle c = (Circle) s;
      if (best == null || c.compareTo(best) > 0) {
        best = c;
      }
    }
    return best;
  }

  public Runnable printer() {
    return new Runnable() {
      private int calls;

      @Override
      public void run() {
        calls++;
        System.out.println(title + calls);
      }
    };
  }

  String describe(int level) {
    switch (level) {
      case 0:
        return title;
      case 1:
        return title + " v" + version;
      default:
        return title + " (" + shapes.size() + ")";
    }
  }

  public enum Mode {
    DRAFT,
    FINAL {
      @Override
      boolean locked() {
        return true;
      }
    };

    boolean locked() {
      return false;
    }
  }
}
