class A { void m(){ if(a){ if(b){ x(); } } } }
