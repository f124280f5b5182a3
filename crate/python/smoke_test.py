"""Smoke test for the orbit_py extension.

Run after `cargo build -p orbit-py` (or `--release`). If `orbit_py` is not
installed, the freshly built shared library under target/ is loaded instead.
"""

import importlib.machinery
import importlib.util
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    try:
        import orbit_py  # noqa: F401

        return orbit_py
    except ImportError:
        pass
    names = ["liborbit_py.so", "liborbit_py.dylib", "orbit_py.dll"]
    candidates = [ROOT / "target" / profile / name for profile in ("release", "debug") for name in names]
    found = [p for p in candidates if p.exists()]
    if not found:
        sys.exit("orbit_py is not built; run `cargo build -p orbit-py` first")
    path = max(found, key=lambda p: p.stat().st_mtime)
    loader = importlib.machinery.ExtensionFileLoader("orbit_py", str(path))
    spec = importlib.util.spec_from_file_location("orbit_py", str(path), loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    op = load_module()

    fib = json.dumps({"additive": [["2", "0"], ["0", "4"]]})
    verdict = op.classify(fib)
    assert verdict["kind"] == "fibration", verdict
    assert verdict["witness"] == "x1^2/x2", verdict
    passed, report = op.verify(fib, json.dumps(verdict))
    assert passed and report["holds"], report

    dense = json.dumps({"additive": [["2", "0"], ["0", "3"]]})
    verdict = op.classify(dense)
    assert verdict["kind"] == "dense"
    assert verdict["witness"]["additive"] == ["1", "1"]
    passed, report = op.verify(dense, json.dumps(verdict), degree=2, steps=12)
    assert passed and report["outcome"] == "FullRank", report

    rotation = json.dumps({"torus": [[0, -1], [1, 0]]})
    assert op.classify(rotation)["kind"] == "fibration"

    content, factors = op.factor(["-1", "0", "0", "0", "1"])  # x^4 - 1
    assert content == "1"
    assert sorted(len(f) - 1 for f, _ in factors) == [1, 1, 2], factors

    assert op.char_poly([["2", "1"], ["0", "3"]]) == ["6", "-5", "1"]

    g = op.growth_check([[1, 1], [0, 1]], [0, 1], 50)
    assert g["verdict"] == "LinearlyBounded" and g["cyclotomic_factor"]

    d = op.density_check(fib, ["1", "1"], degree=2, steps=12)
    assert d["outcome"] == "VanishingPolynomial"
    assert d["vanishing_polynomial"]["text"] == "x1^2 - x2"

    unipotent = json.dumps({"additive": [["1", "1"], ["0", "1"]]})
    points = op.evaluate_orbit(unipotent, ["0", "1"], 5)
    assert [p["additive"] for p in points] == [[str(n), "1"] for n in range(6)]

    relation = op.dependence(["2", "4"])
    assert relation is not None and 2 ** relation[0] * 4 ** relation[1] == 1
    assert op.dependence(["2", "3"]) is None

    try:
        op.classify(json.dumps({"additive": [["1", "1"], ["1", "1"]]}))
    except ValueError as e:
        assert "not dominant" in str(e)
    else:
        raise AssertionError("singular map accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
