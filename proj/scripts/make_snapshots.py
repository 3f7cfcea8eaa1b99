#!/usr/bin/env python3
"""Generate the bundled totally real field snapshots in data/fields/.

Requires cypari2. A5 quintics additionally need PARI's nflistdata package
(pass its directory with --datadir). S5 quintics are not listed by nflist;
they come from a candidate file produced by scripts/quintic_search.cpp.

Class numbers and regulators come from bnfinit, which assumes GRH unless
certified; this matches the usual practice of public field databases.
"""

import argparse
import sys
import time

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)

LABELS = {
    "C3": "3T1", "S3": "3T2",
    "C4": "4T1", "V4": "4T2", "D4": "4T3", "A4": "4T4", "S4": "4T5",
    "C5": "5T1", "D5": "5T2", "F5": "5T3", "A5": "5T4", "S5": "5T5",
}

GALOIS_NAMES = {
    (3, 3): "C3", (3, 6): "S3",
    (4, 4): None, (4, 8): "D4", (4, 12): "A4", (4, 24): "S4",
    (5, 5): "C5", (5, 10): "D5", (5, 20): "F5", (5, 60): "A5", (5, 120): "S5",
}


def galois_name(poly):
    g = pari.polgalois(poly)
    order, deg = int(g[0]), int(pari.poldegree(poly))
    if deg == 4 and order == 4:
        return "C4" if int(g[1]) == -1 else "V4"
    return GALOIS_NAMES[(deg, order)]


def record(poly, group):
    nf = pari.nfinit(poly)
    poly = pari.polredabs(nf)
    nf = pari.nfinit(poly)
    bnf = pari.bnfinit(nf, 1)
    disc = int(pari("(nf) -> nf.disc")(nf))
    index = int(pari("(nf) -> nf.index")(nf))
    overrides = []
    if index > 1:
        for p, _ in pari.factor(index).mattranspose():
            dec = pari.idealprimedec(nf, p)
            overrides.append(f"{int(p)}:" + ",".join(str(int(pari("(pr) -> pr.f")(pr))) for pr in dec))
    coeffs = [int(c) for c in reversed(pari.Vec(poly))]
    return {
        "disc": disc,
        "poly": ",".join(map(str, coeffs)),
        "group": LABELS[group],
        "h": int(pari("(b) -> b.no")(bnf)),
        "R": float(pari("(b) -> b.reg")(bnf)),
        "overrides": ";".join(overrides),
    }


def write(path, degree, records, provenance):
    records.sort(key=lambda r: (r["disc"], r["poly"]))
    seen = {}
    with open(path, "w") as out:
        out.write(f"# {provenance}\n")
        out.write("# label\tdegree\tdisc\tpoly\tgalois\th\tR\tsignature\tlocal\n")
        for r in records:
            seen[r["disc"]] = seen.get(r["disc"], 0) + 1
            label = f"{degree}.{degree}.{r['disc']}.{seen[r['disc']]}"
            out.write("\t".join([label, str(degree), str(r["disc"]), r["poly"], r["group"],
                                 str(r["h"]), f"{r['R']:.15g}", f"{degree},0", r["overrides"]]) + "\n")
    print(f"wrote {len(records)} records to {path}", file=sys.stderr)


def nflist_records(group, max_disc):
    t = time.time()
    polys = pari(f'nflist("{group}", [1, {max_disc}], 0)')
    print(f"{group}: {len(polys)} fields <= {max_disc} in {time.time() - t:.1f}s", file=sys.stderr)
    return [record(p, group) for p in polys]


def candidate_records(path, max_disc):
    fields = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            poly = pari.Pol([int(c) for c in reversed(line.split(","))])
            if not pari.polisirreducible(poly) or int(pari.polsturm(poly)) != 5:
                continue
            disc = int(pari.nfdisc(poly))
            if disc > max_disc:
                continue
            red = pari.polredabs(poly)
            fields[str(red)] = red
    out = []
    for red in fields.values():
        if galois_name(red) == "S5":
            out.append(record(red, "S5"))
    print(f"S5: {len(out)} fields <= {max_disc} from candidates", file=sys.stderr)
    return out


def reduced_records(path, max_disc):
    """Rows of "disc<TAB>galois order<TAB>polredabs polynomial", already deduplicated."""
    out = []
    with open(path) as f:
        for line in f:
            disc, order, poly = line.rstrip("\n").split("\t")
            if int(order) == 120 and int(disc) <= max_disc:
                out.append(record(pari(poly), "S5"))
    print(f"S5: {len(out)} fields <= {max_disc} from reduced list", file=sys.stderr)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, required=True)
    ap.add_argument("--max-disc", type=int, required=True)
    ap.add_argument("--groups", default=None, help="comma-separated subset")
    ap.add_argument("--datadir", default=None, help="PARI data directory holding nflistdata")
    ap.add_argument("--s5-candidates", default=None)
    ap.add_argument("--s5-fields", default=None, help="deduplicated S5 list (disc, order, poly)")
    ap.add_argument("--output", required=True)
    args = ap.parse_args()
    if args.datadir:
        pari.default("datadir", args.datadir)

    groups = {3: ["C3", "S3"], 4: ["C4", "V4", "D4", "A4", "S4"],
              5: ["C5", "D5", "F5", "A5", "S5"]}[args.degree]
    if args.groups:
        groups = [g for g in groups if g in args.groups.split(",")]
    records = []
    for g in groups:
        if g == "S5":
            if args.s5_fields:
                records += reduced_records(args.s5_fields, args.max_disc)
            else:
                records += candidate_records(args.s5_candidates, args.max_disc)
        else:
            records += nflist_records(g, args.max_disc)
    provenance = (f"totally real degree-{args.degree} fields with disc <= {args.max_disc}, "
                  f"groups {','.join(groups)}; PARI/GP {'.'.join(map(str, pari.version()[:3]))} nflist + bnfinit")
    write(args.output, args.degree, records, provenance)


if __name__ == "__main__":
    main()
