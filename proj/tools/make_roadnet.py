#!/usr/bin/env python3
"""Deterministic synthetic road network fixture.

Jittered 46x46 grid skeleton: a randomized spanning tree keeps it connected,
a diluted subset of the remaining lattice edges plus a few diagonal shortcuts
gives road-like loops, and the leftover vertex budget is spent on dead-end
spurs and multi-leaf junctions so the degree profile (and with it the upper
end of the Laplacian spectrum) resembles a real road graph.

Writes tests/data/roadnet2642.edges and tests/data/roadnet2642.xy.
"""

import os
import random

W = H = 46
TARGET = 2642
SEED = 20260815
EXTRA_EDGE_P = 0.55
DIAGONAL_P = 0.04
JUNCTIONS = 70
JUNCTION_LEAVES = 2


def main():
    rng = random.Random(SEED)
    grid = W * H

    def vid(r, c):
        return r * W + c

    def neighbors(r, c):
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < H and 0 <= cc < W:
                yield rr, cc

    edges = set()

    def add(u, v):
        if u != v:
            edges.add((min(u, v), max(u, v)))

    # Randomized DFS spanning tree over the lattice.
    seen = [[False] * W for _ in range(H)]
    stack = [(0, 0)]
    seen[0][0] = True
    while stack:
        r, c = stack[-1]
        options = [(rr, cc) for rr, cc in neighbors(r, c) if not seen[rr][cc]]
        if not options:
            stack.pop()
            continue
        rr, cc = options[rng.randrange(len(options))]
        seen[rr][cc] = True
        add(vid(r, c), vid(rr, cc))
        stack.append((rr, cc))

    # Dilute the remaining lattice edges; sprinkle diagonals.
    for r in range(H):
        for c in range(W):
            if c + 1 < W and rng.random() < EXTRA_EDGE_P:
                add(vid(r, c), vid(r, c + 1))
            if r + 1 < H and rng.random() < EXTRA_EDGE_P:
                add(vid(r, c), vid(r + 1, c))
            if r + 1 < H and c + 1 < W and rng.random() < DIAGONAL_P:
                add(vid(r, c), vid(r + 1, c + 1))

    coords = {}
    for r in range(H):
        for c in range(W):
            coords[vid(r, c)] = (
                c + 0.35 * (rng.random() - 0.5),
                r + 0.35 * (rng.random() - 0.5),
            )

    next_id = grid

    # Junctions: lattice vertices that pick up extra leaf roads.
    junction_anchors = rng.sample(range(grid), JUNCTIONS)
    for a in junction_anchors:
        ax, ay = coords[a]
        for _ in range(JUNCTION_LEAVES):
            add(a, next_id)
            coords[next_id] = (
                ax + 0.45 * (rng.random() - 0.5),
                ay + 0.45 * (rng.random() - 0.5),
            )
            next_id += 1

    # Dead-end spurs: short chains hanging off random lattice vertices.
    while next_id < TARGET:
        anchor = rng.randrange(grid)
        length = min(rng.randint(2, 5), TARGET - next_id)
        prev = anchor
        ax, ay = coords[anchor]
        for step in range(length):
            add(prev, next_id)
            ax += 0.3 * (rng.random() - 0.5)
            ay += 0.3 + 0.2 * rng.random()
            coords[next_id] = (ax, ay)
            prev = next_id
            next_id += 1

    assert next_id == TARGET
    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests", "data")
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "roadnet2642.edges"), "w") as fh:
        fh.write("# synthetic road network, %d vertices\n" % TARGET)
        for u, v in sorted(edges):
            fh.write("%d %d\n" % (u, v))
    with open(os.path.join(out_dir, "roadnet2642.xy"), "w") as fh:
        fh.write("# x y per vertex\n")
        for i in range(TARGET):
            fh.write("%.6f %.6f\n" % coords[i])
    print("vertices", TARGET, "edges", len(edges))


if __name__ == "__main__":
    main()
