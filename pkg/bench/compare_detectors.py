#!/usr/bin/env python3
"""Benchmark the two flip-detector backends on a set of braid words.

The certified root-isolation backend ('sturm') and the sampling/bisection
backend ('bisect') share one contract; this script times both on each
word and checks they emit identical event sequences.

Usage: python bench/compare_detectors.py
"""

import time

from braidshear.braid import SlotConfig, compile_motion, initial_triangulation, parse_braid
from braidshear.kinetic import detect_flips

CASES = [
    (3, "s1"),
    (4, "s1"),
    (4, "s1 s3"),
    (4, "s1 s2 s1"),
    (5, "s2"),
    (5, "s1 s4"),
    (5, "s2 s3 s2"),
]


def main():
    print(f"{'word':>14} {'n':>2} {'events':>6} {'sturm [s]':>10} {'bisect [s]':>10} {'agree':>5}")
    for n, text in CASES:
        cfg = SlotConfig(n)
        word = parse_braid(text, n=n)
        motion, _ = compile_motion(word, cfg)
        tri0, _ = initial_triangulation(cfg)
        timings = {}
        results = {}
        for backend in ("sturm", "bisect"):
            started = time.perf_counter()
            results[backend] = detect_flips(motion, tri0, detector=backend)
            timings[backend] = time.perf_counter() - started
        agree = [(e.stage, e.edge, e.quad) for e in results["sturm"]] == [
            (e.stage, e.edge, e.quad) for e in results["bisect"]
        ]
        print(
            f"{text!r:>14} {n:>2} {len(results['sturm']):>6} "
            f"{timings['sturm']:>10.3f} {timings['bisect']:>10.3f} {str(agree):>5}"
        )


if __name__ == "__main__":
    main()
