#!/usr/bin/env python3
"""Census of conjugacy classes inside balls of the reference presentations.

Enumerates the ball of a given radius, groups elements into conjugacy classes
with the exact decision procedure, and prints class-size statistics plus the
largest classes.  Useful for eyeballing how commutation shapes class growth.
"""

import argparse
from collections import Counter

from graphprod import corpus
from graphprod.conjugacy import are_conjugate
from graphprod.words import ball


def census(radius: int, window: int, top: int) -> None:
    for name, pres in corpus.corpus_presentations().items():
        elements = ball(pres, radius, window=window)
        classes = []
        for e in elements:
            for cls in classes:
                if are_conjugate(cls[0], e).conjugate:
                    cls.append(e)
                    break
            else:
                classes.append([e])
        sizes = Counter(len(cls) for cls in classes)
        size_summary = ", ".join(f"{size}x{count}" for size, count in sorted(sizes.items()))
        print(f"{name}: |ball|={len(elements)} classes={len(classes)} sizes: {size_summary}")
        biggest = sorted(classes, key=len, reverse=True)[:top]
        for cls in biggest:
            reps = " ~ ".join(e.render() for e in cls[:4])
            more = "" if len(cls) <= 4 else f" ... (+{len(cls) - 4})"
            print(f"    [{len(cls)}] {reps}{more}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radius", type=int, default=4)
    parser.add_argument("--window", type=int, default=2)
    parser.add_argument("--top", type=int, default=2)
    args = parser.parse_args()
    census(args.radius, args.window, args.top)
