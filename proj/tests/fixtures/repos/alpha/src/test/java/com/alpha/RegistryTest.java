package com.alpha;

import org.junit.Test;

public class RegistryTest {
  @Test
  public void unitIsSquare() {
    new Registry().register(Registry.unit());
  }
}
