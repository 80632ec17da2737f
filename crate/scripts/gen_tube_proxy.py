#!/usr/bin/env python3
"""Generate a 307-station transit-like graph used as a stand-in for the
London Underground network (which cannot be redistributed).

Lines are smooth random walks in the plane. A walk that passes close to a
station of another line snaps onto it, creating an interchange. Every line
after the first starts at an existing station, so the result is connected.
Output is a SNAP-style edge list on stdout.
"""
import math
import random
import sys

TARGET = 307
SNAP_RADIUS = 0.7


def main(seed: int = 1863) -> None:
    rng = random.Random(seed)
    pos = []          # station coordinates
    line_of = []      # set of lines serving each station
    edges = []
    seen = set()

    def add_station(p, line):
        pos.append(p)
        line_of.append({line})
        return len(pos) - 1

    def add_edge(u, v):
        key = (min(u, v), max(u, v))
        if u != v and key not in seen:
            seen.add(key)
            edges.append(key)

    line = 0
    while len(pos) < TARGET:
        if not pos:
            cur = add_station((0.0, 0.0), line)
            theta = rng.uniform(0, 2 * math.pi)
        else:
            cur = rng.randrange(len(pos))
            line_of[cur].add(line)
            theta = rng.uniform(0, 2 * math.pi)
        length = rng.randint(14, 40)
        x, y = pos[cur]
        for _ in range(length):
            if len(pos) >= TARGET:
                break
            theta += rng.gauss(0.0, 0.25)
            x += math.cos(theta)
            y += math.sin(theta)
            if math.hypot(x, y) > 14.0:
                break
            best, best_d = None, SNAP_RADIUS
            for s, q in enumerate(pos):
                if line in line_of[s]:
                    continue
                d = math.hypot(q[0] - x, q[1] - y)
                if d < best_d:
                    best, best_d = s, d
            if best is None:
                nxt = add_station((x, y), line)
            else:
                nxt = best
                line_of[nxt].add(line)
                x, y = pos[nxt]
            add_edge(cur, nxt)
            cur = nxt
        line += 1

    out = sys.stdout
    out.write("# Transit-like proxy graph (London tube stand-in)\n")
    out.write(f"# Nodes: {len(pos)} Edges: {len(edges)} Lines: {line} Seed: {seed}\n")
    out.write("# FromNodeId\tToNodeId\n")
    for u, v in edges:
        out.write(f"{u}\t{v}\n")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1863)
