"""Regenerate src/flowroute/data/*.txt from public topology data.

Needs the ``topohub`` wheel (Topology Zoo snapshots as JSON) unpacked at the
path given on the command line. Not used at runtime.
"""

import hashlib
import json
import math
import sys
from pathlib import Path

RETRIEVED = "2026-10-19"
OUT = Path(__file__).resolve().parents[1] / "src" / "flowroute" / "data"

# Internet2 OS3E map: 34 PoPs, 42 links (Internet2 OS3E map publication)
OS3E_PATHS = [
    ["Vancouver", "Seattle"],
    ["Seattle", "Missoula", "Minneapolis", "Chicago"],
    ["Seattle", "Salt Lake City"],
    ["Seattle", "Portland", "Sunnyvale"],
    ["Sunnyvale", "Salt Lake City"],
    ["Sunnyvale", "Los Angeles"],
    ["Los Angeles", "Salt Lake City"],
    ["Los Angeles", "Tucson", "El Paso"],
    ["Salt Lake City", "Denver"],
    ["Denver", "Albuquerque", "El Paso"],
    ["Denver", "Kansas City", "Chicago"],
    ["Kansas City", "Dallas", "Houston"],
    ["El Paso", "Houston"],
    ["Houston", "Jackson", "Memphis", "Nashville"],
    ["Houston", "Baton Rouge", "Jacksonville"],
    ["Chicago", "Indianapolis", "Louisville", "Nashville"],
    ["Nashville", "Atlanta"],
    ["Atlanta", "Jacksonville"],
    ["Jacksonville", "Miami"],
    ["Chicago", "Cleveland"],
    ["Cleveland", "Buffalo", "Boston", "New York", "Philadelphia", "Washington DC"],
    ["Cleveland", "Pittsburgh", "Ashburn", "Washington DC"],
    ["Washington DC", "Raleigh", "Atlanta"],
]

# approximate city-centre coordinates (lat, lon), used only to rank link lengths
OS3E_POS = {
    "Vancouver": (49.28, -123.12), "Seattle": (47.61, -122.33), "Missoula": (46.87, -113.99),
    "Minneapolis": (44.98, -93.27), "Chicago": (41.88, -87.63), "Salt Lake City": (40.76, -111.89),
    "Portland": (45.52, -122.68), "Sunnyvale": (37.37, -122.04), "Los Angeles": (34.05, -118.24),
    "Tucson": (32.22, -110.97), "El Paso": (31.76, -106.49), "Denver": (39.74, -104.99),
    "Albuquerque": (35.08, -106.65), "Kansas City": (39.10, -94.58), "Dallas": (32.78, -96.80),
    "Houston": (29.76, -95.37), "Jackson": (32.30, -90.18), "Memphis": (35.15, -90.05),
    "Nashville": (36.16, -86.78), "Baton Rouge": (30.45, -91.19), "Jacksonville": (30.33, -81.66),
    "Indianapolis": (39.77, -86.16), "Louisville": (38.25, -85.76), "Atlanta": (33.75, -84.39),
    "Miami": (25.76, -80.19), "Cleveland": (41.50, -81.69), "Buffalo": (42.89, -78.88),
    "Boston": (42.36, -71.06), "New York": (40.71, -74.01), "Philadelphia": (39.95, -75.17),
    "Washington DC": (38.91, -77.04), "Pittsburgh": (40.44, -80.00), "Ashburn": (39.04, -77.49),
    "Raleigh": (35.78, -78.64),
}


def haversine(a, b):
    (la1, lo1), (la2, lo2) = a, b
    p1, p2 = math.radians(la1), math.radians(la2)
    dp, dl = p2 - p1, math.radians(lo2 - lo1)
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 6371.0 * 2 * math.asin(math.sqrt(h))


def load_zoo(root, name):
    d = json.loads((Path(root) / "topohub" / "data" / "topozoo" / f"{name}.json").read_text())
    names = {n["id"]: n["name"] for n in d["nodes"]}
    pos = {n["name"]: tuple(reversed(n["pos"])) for n in d["nodes"]}
    edges = [(names[e["source"]], names[e["target"]]) for e in d["edges"]]
    return list(names.values()), edges, pos


def subdivide_longest(nodes, edges, pos, count):
    ranked = sorted(edges, key=lambda e: (-haversine(pos[e[0]], pos[e[1]]), e))
    split = set(ranked[:count])
    out_nodes, out_edges = list(nodes), []
    for a, b in edges:
        if (a, b) in split:
            relay = f"relay {a}-{b}"
            out_nodes.append(relay)
            out_edges += [(a, relay), (relay, b)]
        else:
            out_edges.append((a, b))
    return out_nodes, out_edges, [f"{a} - {b}" for a, b in ranked[:count]]


def write(name, nodes, edges, header):
    ix = {v: i for i, v in enumerate(nodes)}
    pairs = sorted({tuple(sorted((ix[a], ix[b]))) for a, b in edges})
    assert len(pairs) == len(edges)
    body = "".join(f"{u} {v}\n" for u, v in pairs)
    lines = [f"# {h}" for h in header]
    lines.append(f"# retrieved: {RETRIEVED}")
    lines.append(f"# sha256(edges): {hashlib.sha256(body.encode()).hexdigest()}")
    lines += [f"# node {i}: {v}" for i, v in enumerate(nodes)]
    lines.append(f"# nodes: {len(nodes)}")
    (OUT / f"{name}.txt").write_text("\n".join(lines) + "\n" + body)


def main(root):
    zoo = "Topology Zoo snapshot via the topohub 1.5.1 package (https://pypi.org/project/topohub/); " \
          "Topology Zoo: http://www.topology-zoo.org/"

    nodes, edges, _ = load_zoo(root, "Rnp")
    write("rnp", nodes, edges, [
        "RNP (Brazil) backbone", f"source: {zoo}, file Rnp", "edits: none"])

    nodes, edges, _ = load_zoo(root, "WideJpn")
    drop = {"Bangkok", "Los Angeles", "San Francisco", "ShinKawasaki"}
    merge = {"KDDI Otemachi": "Otemachi", "NTT Otemachi": "Otemachi"}
    keep = []
    for v in nodes:
        v = merge.get(v, v)
        if v not in drop and v not in keep:
            keep.append(v)
    out = set()
    for a, b in edges:
        a, b = merge.get(a, a), merge.get(b, b)
        if a != b and a not in drop and b not in drop:
            out.add(tuple(sorted((a, b))))
    write("wide", keep, sorted(out), [
        "WIDE (Japan) backbone, APPROXIMATION", f"source: {zoo}, file WideJpn (19 PoPs)",
        "edits: dropped overseas PoPs Bangkok, Los Angeles, San Francisco;",
        "  merged KDDI Otemachi and NTT Otemachi into one Otemachi PoP;",
        "  dropped the single-homed ShinKawasaki stub. Result: 14 PoPs.",
        "Approximate: edges are reconstructed, not copied from an official map."])

    nodes, edges, pos = load_zoo(root, "Geant2012")
    nodes, edges, split = subdivide_longest(nodes, edges, pos, 7)
    write("geant", nodes, edges, [
        "GEANT (Europe) backbone, APPROXIMATION", f"source: {zoo}, file Geant2012 (37 PoPs)",
        "edits: the 7 geographically longest links each split by one relay site",
        "  (relays are ASSUMED, not taken from a map): " + "; ".join(split),
        "Approximate: node count matches the official backbone, edges are reconstructed."])

    nodes = list(OS3E_POS)
    edges = [(p[i], p[i + 1]) for p in OS3E_PATHS for i in range(len(p) - 1)]
    nodes, edges, split = subdivide_longest(nodes, edges, OS3E_POS, 20)
    write("internet2", nodes, edges, [
        "Internet2 backbone, APPROXIMATION",
        "source: Internet2 OS3E map (34 PoPs, 42 links) as transcribed in the controller-placement",
        "  literature; link lengths ranked by great-circle distance between PoP cities",
        "edits: the 20 longest links each split by one relay site",
        "  (relays are ASSUMED, not taken from a map): " + "; ".join(split),
        "Approximate: node count matches the official backbone, edges are reconstructed."])


if __name__ == "__main__":
    main(sys.argv[1])
