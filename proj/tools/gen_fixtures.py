#!/usr/bin/env python3
"""Regenerate the committed IEEE case files under data/ from pandapower.

The branch parameters are taken from pandapower's internal per-unit branch
table (the same numbers MATPOWER-style solvers consume), so r_pu and x_pu are
on the system base and rating_mw is RATE_A. Out-of-service lines (the five
normally-open tie switches of the 33-bus feeder) are written with
"in_service": false so the file still lists every line of the source case.

Usage: python3 tools/gen_fixtures.py [outdir]
"""
import json
import sys
import warnings

import pandapower as pp
import pandapower.networks as pn

warnings.filterwarnings("ignore")

CASES = {
    "ieee14": pn.case14,
    "ieee33": pn.case33bw,
    "ieee118": pn.case118,
}


def export(net):
    out_of_service = set(net.line.index[~net.line.in_service])
    net.line["in_service"] = True
    pp.rundcpp(net)
    ppc = net._ppc
    lookup = net._pd2ppc_lookups["bus"]

    buses = []
    for idx, row in net.bus.iterrows():
        buses.append({
            "id": int(lookup[idx]),
            "name": str(row["name"]) if row["name"] is not None else str(idx),
            "is_slack": bool(idx in set(net.ext_grid.bus)),
        })
    buses.sort(key=lambda b: b["id"])

    branch = ppc["branch"]
    n_lines = len(net.line)
    branches = []
    for row_idx in range(branch.shape[0]):
        row = branch[row_idx]
        entry = {
            "from": int(row[0].real),
            "to": int(row[1].real),
            "r_pu": float(row[2].real),
            "x_pu": float(row[3].real),
            "rating_mw": float(row[5].real),
            "kind": "line" if row_idx < n_lines else "transformer",
        }
        if row_idx < n_lines and net.line.index[row_idx] in out_of_service:
            entry["in_service"] = False
        branches.append(entry)

    return {
        "base_mva": float(ppc["baseMVA"]),
        "buses": buses,
        "branches": branches,
    }


def dumps(case):
    lines = ['{', f' "base_mva": {json.dumps(case["base_mva"])},']
    for key in ("buses", "branches"):
        rows = [f'  {json.dumps(item)}' for item in case[key]]
        tail = "," if key == "buses" else ""
        lines.append(f' "{key}": [')
        lines.append(",\n".join(rows))
        lines.append(f' ]{tail}')
    lines.append('}')
    return "\n".join(lines) + "\n"


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data"
    for name, factory in CASES.items():
        case = export(factory())
        with open(f"{outdir}/{name}.json", "w", encoding="utf-8") as fh:
            fh.write(dumps(case))
        print(f"{name}: {len(case['buses'])} buses, {len(case['branches'])} branches")


if __name__ == "__main__":
    main()
