class A {
  void f() {}

  void g(int k) {
    for (int i = 0; i < k; i++) {
      if (i % 2 == 0 && k > 3) {
        h();
      }
    }
  }
}
