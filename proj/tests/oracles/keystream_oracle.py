#!/usr/bin/env python3
"""Straight-line reference computations for the frozen values in the C++ tests.

Independent of the library: plain Python floats (IEEE double, round to
nearest), written directly from the scheme's formulas.
"""
import math


def henon_xs(alpha, beta, x, y, n, burn):
    xs = []
    for k in range(burn + n):
        x, y = 1 - alpha * x * x + y, beta * x
        if k >= burn:
            xs.append(x)
    return xs


def u8(v):
    return int(math.floor(abs(v) * 1e9)) % 256


def keystream(c, l, phi):
    half = (l + 1) // 2
    first = [u8(math.cos(phi / k) * c[k - 1] + math.sin(phi / k) * c[k]) for k in range(1, half + 1)]
    second = [u8(math.sin(phi / i) * c[i - 1] - math.cos(phi / i) * c[i]) for i in range(half + 1, l + 1)]
    return first, second


def key_row(xs, r, l):
    return [int(math.floor(abs((xs[i] + l) / (65536.0 + l)) * 1e16)) % 256 for i in range(r)]


def hide(first, second, row):
    r = len(row)
    m = [row[(j + c) % r] for j in range(r) for c in range(r)]
    v = first + second
    return [b ^ m[i % (r * r)] for i, b in enumerate(v)]


def lyapunov_two_trajectory(alpha, beta, n, burn=1000, d0=1e-9):
    # Largest exponent by renormalized finite separation (not tangent maps).
    x, y = 0.01, 0.003
    for _ in range(burn):
        x, y = 1 - alpha * x * x + y, beta * x
    px, py = x + d0, y
    acc = 0.0
    for _ in range(n):
        x, y = 1 - alpha * x * x + y, beta * x
        px, py = 1 - alpha * px * px + py, beta * px
        d = math.hypot(px - x, py - y)
        acc += math.log(d / d0)
        px, py = x + (px - x) * d0 / d, y + (py - y) * d0 / d
    return acc / n


if __name__ == "__main__":
    print("first step", henon_xs(1.4, 0.3, 0.01, 0.003, 1, 0))
    c = henon_xs(1.4, 0.3, 0.01, 0.003, 9, 1000)
    f, s = keystream(c, 8, math.pi / 4)
    print("keystream l=8 phi=pi/4:", f, s)
    print("key row r=4 l=8:", key_row(c, 4, 8))
    print("hidden l=8 r=4:", hide(f, s, key_row(c, 4, 8)))
    print("key row r=2 x=[0.5,-0.5] l=1000:", key_row([0.5, -0.5], 2, 1000))
    print("s values:", 1000.5 / 66536, 999.5 / 66536)
    c = henon_xs(1.4, 0.3, 0.01, 0.003, 17, 1000)
    f, s = keystream(c, 16, math.pi / 4)
    print("keystream l=16:", f, s, "row", key_row(c, 4, 16), "hidden", hide(f, s, key_row(c, 4, 16)))
    t = 0.001
    print("mix single:", 0.5 * (math.cosh(t) - math.sinh(t)) + 100 * (math.cosh(t) + math.sinh(t)))
    print("lambda1 two-trajectory n=1e6:", lyapunov_two_trajectory(1.4, 0.3, 1000000))
    print("lambda1 alpha=0.2:", lyapunov_two_trajectory(0.2, 0.3, 100000))
    print("key space:", 2 * math.log10(2e6) + 64 + 32 * math.log10(2), 64 + 32 * math.log10(2))
