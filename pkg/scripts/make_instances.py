#!/usr/bin/env python3
"""Regenerate the checked-in instance files under instances/.

The four instances are the hand-checked regression cases used throughout the
test suite; rerunning this script must reproduce the files byte for byte.
"""

from pathlib import Path

from rcfilter import save_instance, weighted_instance

OUT = Path(__file__).resolve().parent.parent / "instances"


def build():
    yield "assignment3.json", weighted_instance(
        "alldiff",
        3,
        [0, 1, 2],
        [(0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 0), (1, 2, 1), (2, 1, 2), (2, 2, 0)],
        z_max=1,
    )
    yield "dag6.json", weighted_instance(
        "path",
        5,
        [0, 1, 2, 3, 4, 5],
        [
            (0, 1, 0), (0, 2, 2), (0, 3, 1),
            (1, 5, 2), (1, 2, 0),
            (3, 4, 0),
            (2, 5, 0),
            (4, 5, 1),
        ],
        z_max=1,
        source=0,
        sink=5,
    )
    yield "assignment3_alt.json", weighted_instance(
        "alldiff",
        3,
        [0, 1, 2],
        [
            (0, 0, 0), (0, 1, 2), (0, 2, 0),
            (1, 0, 1), (1, 1, 0), (1, 2, 1),
            (2, 1, 1), (2, 2, 0),
        ],
        z_max=1,
    )
    yield "dag5.json", weighted_instance(
        "path",
        4,
        [0, 1, 2, 3, 4],
        [
            (0, 1, 1), (0, 2, 2), (0, 3, 0),
            (1, 4, 1), (1, 2, 0),
            (2, 4, 1),
            (3, 4, 0),
        ],
        z_max=1,
        source=0,
        sink=4,
    )


def main():
    OUT.mkdir(exist_ok=True)
    for name, inst in build():
        save_instance(inst, OUT / name)
        print(f"wrote {OUT / name}")


if __name__ == "__main__":
    main()
