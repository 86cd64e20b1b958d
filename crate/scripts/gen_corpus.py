#!/usr/bin/env python3
"""Regenerates crates/core/corpus/*.json from group character tables and known fusion rules."""
import cmath
import json
import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "corpus")
W = cmath.exp(2j * cmath.pi / 3)
GROUP_FLAGS = ["braided", "ribbon", "spherical", "pseudo_unitary", "unitary"]
MODULAR_FLAGS = GROUP_FLAGS + ["modular"]


def fusion_from_characters(chars, sizes):
    order = sum(sizes)
    r = len(chars)
    n = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                v = sum(s * chars[i][c] * chars[j][c] * chars[k][c].conjugate() for c, s in enumerate(sizes)) / order
                m = round(v.real)
                assert abs(v - m) < 1e-9, (i, j, k, v)
                n[i][j][k] = m
    return n


def dual_from_characters(chars):
    conj = [[x.conjugate() for x in row] for row in chars]
    return [next(k for k, row in enumerate(chars) if all(abs(a - b) < 1e-9 for a, b in zip(row, conj[i]))) for i in range(len(chars))]


def render(z):
    """Values of the fixtures: integers and the cube roots of unity."""
    for text, v in [("(-1+sqrt(-3))/2", W), ("(-1-sqrt(-3))/2", W.conjugate())]:
        if abs(z - v) < 1e-9:
            return text
    assert abs(z.imag) < 1e-9 and abs(z.real - round(z.real)) < 1e-9, z
    return str(round(z.real))


def group_doc(name, labels, classes, sizes, chars, center):
    chars = [[complex(x) for x in row] for row in chars]
    return {
        "name": name,
        "labels": labels,
        "dual": dual_from_characters(chars),
        "fusion": fusion_from_characters(chars, sizes),
        "assume": GROUP_FLAGS,
        "expected": {
            "fp_dims": [render(row[0]) for row in chars],
            "fp_dim": str(sum(sizes)),
            # the universal grading group of Rep(G) is dual to Z(G)
            "universal_grading_order": center,
            "group": {
                "order": sum(sizes),
                "center_order": center,
                "classes": [
                    {"name": c, "size": s, "values": [render(row[k]) for row in chars]}
                    for k, (c, s) in enumerate(zip(classes, sizes))
                ],
            },
        },
    }


def pointed(n):
    labels = ["1"] + ["g" if g == 1 else f"g{g}" for g in range(1, n)]
    fusion = [[[1 if k == (i + j) % n else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return {
        "name": f"pointed_z{n}",
        "labels": labels,
        "dual": [(n - g) % n for g in range(n)],
        "fusion": fusion,
        "assume": GROUP_FLAGS,
        "expected": {"fp_dims": ["1"] * n, "fp_dim": str(n), "universal_grading_order": n},
    }


def from_rule(labels, dual, rule):
    r = len(labels)
    n = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for k, m in rule(i, j):
                n[i][j][k] += m
    return n


def fibonacci():
    def rule(i, j):
        if i == 0 or j == 0:
            return [(i + j, 1)]
        return [(0, 1), (1, 1)]

    return {
        "name": "fibonacci",
        "labels": ["1", "tau"],
        "dual": [0, 1],
        "fusion": from_rule(["1", "tau"], [0, 1], rule),
        "s_matrix": [["1", "(1+sqrt(5))/2"], ["(1+sqrt(5))/2", "-1"]],
        "assume": MODULAR_FLAGS,
        "expected": {"fp_dims": ["1", "(1+sqrt(5))/2"], "fp_dim": "(5+sqrt(5))/2", "universal_grading_order": 1},
    }


def ising_rule(i, j):
    # 0 = 1, 1 = eps, 2 = sigma
    if i == 0 or j == 0:
        return [(i + j, 1)]
    if i == 1 and j == 1:
        return [(0, 1)]
    if {i, j} == {1, 2}:
        return [(2, 1)]
    return [(0, 1), (1, 1)]


def ising():
    labels = ["1", "eps", "sigma"]
    return {
        "name": "ising",
        "labels": labels,
        "dual": [0, 1, 2],
        "fusion": from_rule(labels, [0, 1, 2], ising_rule),
        "s_matrix": [["1", "1", "sqrt(2)"], ["1", "1", "-sqrt(2)"], ["sqrt(2)", "-sqrt(2)", "0"]],
        "assume": MODULAR_FLAGS,
        "expected": {"fp_dims": ["1", "1", "sqrt(2)"], "fp_dim": "4", "universal_grading_order": 2},
    }


def toric_code():
    labels = ["1", "e", "m", "f"]
    # Z/2 x Z/2 with e = (1,0), m = (0,1), f = (1,1)
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    rule = lambda i, j: [(elems.index(((elems[i][0] + elems[j][0]) % 2, (elems[i][1] + elems[j][1]) % 2)), 1)]
    s = [["1", "1", "1", "1"], ["1", "1", "-1", "-1"], ["1", "-1", "1", "-1"], ["1", "-1", "-1", "1"]]
    return {
        "name": "toric_code",
        "labels": labels,
        "dual": [0, 1, 2, 3],
        "fusion": from_rule(labels, [0, 1, 2, 3], rule),
        "s_matrix": s,
        "assume": MODULAR_FLAGS,
        "expected": {"fp_dims": ["1"] * 4, "fp_dim": "4", "universal_grading_order": 4},
    }


def ising_x_z2():
    base = ["1", "eps", "sigma"]
    labels = base + [f"{b}_g" if b != "1" else "g" for b in base]
    def rule(i, j):
        a, g = i % 3, i // 3
        b, h = j % 3, j // 3
        return [(k + 3 * ((g + h) % 2), m) for k, m in ising_rule(a, b)]
    return {
        "name": "ising_x_z2",
        "labels": labels,
        "dual": list(range(6)),
        "fusion": from_rule(labels, list(range(6)), rule),
        "assume": GROUP_FLAGS,
        "expected": {
            "fp_dims": ["1", "1", "sqrt(2)", "1", "1", "sqrt(2)"],
            "fp_dim": "8",
            "universal_grading_order": 4,
        },
    }


def main():
    docs = [pointed(n) for n in range(1, 7)]
    docs.append(group_doc(
        "rep_s3", ["1", "sgn", "V"], ["e", "(12)", "(123)"], [1, 3, 2],
        [[1, 1, 1], [1, -1, 1], [2, 0, -1]], 1))
    d4_chars = [[1, 1, 1, 1, 1], [1, 1, 1, -1, -1], [1, 1, -1, 1, -1], [1, 1, -1, -1, 1], [2, -2, 0, 0, 0]]
    docs.append(group_doc(
        "rep_d4", ["1", "a", "b", "c", "V"], ["e", "r2", "r", "s", "sr"], [1, 1, 2, 2, 2], d4_chars, 2))
    docs.append(group_doc(
        "rep_q8", ["1", "i", "j", "k", "H"], ["1", "-1", "+-i", "+-j", "+-k"], [1, 1, 2, 2, 2], d4_chars, 2))
    docs.append(group_doc(
        "rep_a4", ["1", "w", "w2", "V"], ["e", "(12)(34)", "(123)", "(132)"], [1, 3, 4, 4],
        [[1, 1, 1, 1], [1, 1, W, W * W], [1, 1, W * W, W], [3, -1, 0, 0]], 1))
    docs += [fibonacci(), ising(), toric_code(), ising_x_z2()]
    for doc in docs:
        path = os.path.join(OUT, doc["name"] + ".json")
        with open(path, "w") as f:
            f.write(dump(doc))
    print(f"wrote {len(docs)} documents", file=sys.stderr)


def dump(doc):
    """JSON with one fusion row per line."""
    lines = ["{"]
    keys = list(doc)
    for n, key in enumerate(keys):
        comma = "," if n + 1 < len(keys) else ""
        if key == "fusion":
            rows = []
            for i, plane in enumerate(doc["fusion"]):
                inner = ",\n".join("      " + json.dumps(row) for row in plane)
                rows.append("    [\n" + inner + "\n    ]")
            lines.append('  "fusion": [\n' + ",\n".join(rows) + "\n  ]" + comma)
        elif key in ("s_matrix",):
            inner = ",\n".join("    " + json.dumps(row) for row in doc[key])
            lines.append(f'  "{key}": [\n' + inner + "\n  ]" + comma)
        elif isinstance(doc[key], list):
            lines.append(f'  "{key}": {json.dumps(doc[key])}{comma}')
        else:
            body = compact_lists(json.dumps(doc[key], indent=2)).replace("\n", "\n  ")
            lines.append(f'  "{key}": {body}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def compact_lists(text):
    """Collapses arrays of scalars onto one line."""
    out, buf = [], None
    for line in text.split("\n"):
        stripped = line.strip()
        if buf is not None:
            if stripped.startswith("]"):
                out.append(buf[0] + ", ".join(buf[1:]) + stripped)
                buf = None
            elif stripped.startswith("{") or stripped.startswith("["):
                out.append(buf[0].rstrip())
                out.extend("  " + b for b in buf[1:])
                out.append(line)
                buf = None
            else:
                buf.append(stripped.rstrip(","))
        elif stripped.endswith("["):
            buf = [line]
        else:
            out.append(line)
    return "\n".join(out)


if __name__ == "__main__":
    main()
