class A { int f; void m(){ f++; } }
