package com.alpha;

public record Point(int x, int y) {}
