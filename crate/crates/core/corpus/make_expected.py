"""Regenerates the example corpus and its expected outputs.

The expected values are computed with dense numpy linear algebra, which
shares no code with the crate. Run from this directory:

    python3 make_expected.py
"""

import json

import numpy as np


def random_hermitian(rng, n, s, diag_range=(0.0, 1.0)):
    a = np.zeros((n, n), dtype=complex)
    a[np.diag_indices(n)] = rng.uniform(*diag_range, size=n)
    degree = np.ones(n, dtype=int)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    for i, j in pairs:
        if degree[i] < s and degree[j] < s:
            r = np.sqrt(rng.uniform())
            phi = rng.uniform(0, 2 * np.pi)
            a[i, j] = r * np.exp(1j * phi)
            a[j, i] = np.conj(a[i, j])
            degree[i] += 1
            degree[j] += 1
    return a


def write_qmat(path, a, s):
    n = a.shape[0]
    lines = ["qmat v1", f"{n} {s}"]
    for i in range(n):
        for j in range(i, n):
            if a[i, j] != 0:
                lines.append(f"{i} {j} {float(a[i, j].real)!r} {float(a[i, j].imag)!r}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def write_qvec(path, v):
    lines = ["qvec v1", str(len(v))] + [f"{float(z.real)!r} {float(z.imag)!r}" for z in v]
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def c(z):
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def main():
    rng = np.random.default_rng(20240611)
    identity = np.eye(4, dtype=complex)
    diagonal = np.diag([0.2, 0.4, 0.6, 0.8]).astype(complex)
    r8 = random_hermitian(rng, 8, 3)
    # a diagonally dominant instance with a clear top eigenvalue
    while True:
        r8b = random_hermitian(rng, 8, 2, diag_range=(0.0, 0.4))
        r8b[0, 0] = 1.0
        w = np.linalg.eigvalsh(r8b)
        if w[-1] > abs(w[0]) and max(abs(w[-2]), abs(w[0])) / w[-1] < 0.8:
            break
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    v /= np.linalg.norm(v)

    write_qmat("identity4.qmat", identity, 1)
    write_qmat("diagonal4.qmat", diagonal, 1)
    write_qmat("random8.qmat", r8, 3)
    write_qmat("random8b.qmat", r8b, 2)
    write_qvec("state8.qvec", v)

    cases = []

    def case(name, args, expect, tol=1e-9):
        cases.append({"name": name, "args": args, "expect": expect, "tolerance": tol})

    for fname, a in [("identity4.qmat", identity), ("diagonal4.qmat", diagonal), ("random8.qmat", r8)]:
        for method in ["relocation", "entangled"]:
            case(
                f"trace {fname} {method}",
                ["trace", "--matrix", fname, "--method", method],
                {"estimate": c(np.trace(a)), "exact": c(np.trace(a))},
            )
    case(
        "trace-prod random8 random8b",
        ["trace-prod", "--matrix", "random8.qmat", "--matrix-b", "random8b.qmat"],
        {"estimate": c(np.trace(r8 @ r8b)), "abs": float(abs(np.trace(r8 @ r8b)))},
    )
    for fname, a in [("identity4.qmat", identity), ("random8.qmat", r8)]:
        f = float(np.linalg.norm(a, "fro"))
        case(
            f"frobenius {fname}",
            ["frobenius", "--matrix", fname],
            {"estimate": c(f), "via_product": {"estimate": c(f)}, "discrepancy": 0.0},
        )
    av = r8 @ v
    case(
        "apply random8 state8",
        ["apply", "--matrix", "random8.qmat", "--state", "state8.qvec"],
        {
            "success_probability": float(np.vdot(av, av).real / 9.0),
            "expected_amplification_rounds": float(3.0 / np.linalg.norm(av)),
            "output_state": [c(z) for z in av / np.linalg.norm(av)],
        },
    )
    case(
        "apply diagonal4 basis",
        ["apply", "--matrix", "diagonal4.qmat", "--basis", "2"],
        {"success_probability": 0.36, "output_state": [c(0), c(0), c(1), c(0)]},
    )
    for fname, a in [("diagonal4.qmat", diagonal), ("random8b.qmat", r8b)]:
        lam = float(np.linalg.eigvalsh(a)[-1])
        case(
            f"eigmax {fname}",
            ["eigmax", "--matrix", fname, "--tol", "1e-13", "--max-iter", "500"],
            {"estimate": c(lam), "power": {"sign_ambiguous": False}},
            tol=1e-6,
        )
    for fname in ["identity4.qmat", "diagonal4.qmat", "random8.qmat", "random8b.qmat"]:
        case(f"verify-walk {fname}", ["verify-walk", "--matrix", fname], {"passed": True})

    with open("expected.json", "w") as f:
        json.dump({"shots": 0, "cases": cases}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
