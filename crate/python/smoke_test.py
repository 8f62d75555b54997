"""Smoke test for the pywedderburn extension module.

Builds the extension with cargo (unless PYWEDDERBURN_LIB points at an
already-built library), loads it and checks a few known decompositions.

    python python/smoke_test.py
"""

import importlib.util
import json
import os
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

G1 = "Q + 4*Q(z3) + 12*Q(z9) + 3*M3(Q(z9)) + M9(Q(z9))"
G2 = "Q + 4*Q(z3) + 3*Q(z9) + 3*Q(z27) + 3*M3(Q(z3)) + 2*M3(Q(z9)) + 3*M9(Q(z3))"
G3 = "Q + 4*Q(z3) + 3*Q(z9) + 3*Q(z27) + 3*M3(Q(z3)) + 2*M3(Q(z9))"


def built_library() -> Path:
    override = os.environ.get("PYWEDDERBURN_LIB")
    if override:
        return Path(override)
    subprocess.run(
        ["cargo", "build", "--release", "-p", "wedderburn-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    names = {"linux": "libpywedderburn.so", "darwin": "libpywedderburn.dylib", "win32": "pywedderburn.dll"}
    return ROOT / "target" / "release" / names.get(sys.platform, "libpywedderburn.so")


def load(lib: Path):
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    tmp = Path(tempfile.mkdtemp())
    target = tmp / f"pywedderburn{suffix}"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("pywedderburn", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> int:
    wb = load(built_library())

    g1 = wb.Group(3, 4, 2, r=10)
    assert (g1.s, g1.k, g1.order, g1.canonical_r) == (2, 1, 729, 10)
    assert str(g1.decompose()) == G1
    assert g1.decompose("both") == g1.decompose("oracle")
    assert g1.decompose().dimension() == 729
    assert g1.complex_counts() == {1: 81, 3: 18, 9: 6}
    assert g1.rational_counts() == g1.rational_counts(oracle=True)

    assert wb.decompose(3, 3, 3, 4) == G2
    g3 = wb.Group(3, 2, 3, s=1)
    assert g3.r == 4 and str(g3.decompose()) == G3

    parsed = wb.Decomposition.parse(G1, 3)
    assert parsed == g1.decompose() and parsed.components[-1] == (9, 2, 1)
    assert wb.Decomposition.parse(G3, 3).diff(wb.Decomposition.parse(G2, 3)) == [(9, 1, 0, 3)]

    report = json.loads(g1.report_json("both"))
    assert report["provenance"] == "both (verified)"
    assert report["components"][0] == {"q": 1, "lambda": 0, "mult": 1}

    chars = g3.characters()
    assert len(chars) == g3.conjugacy_class_count()
    assert sum(c.degree ** 2 for c in chars) == g3.order
    induced = next(c for c in chars if c.kind == "induced")
    assert induced.value(0, 0) == "3"

    agrees, summary, checks = wb.Group(3, 2, 2, s=1).verify(deep=True)
    assert agrees and summary == "" and all(not failures for _, _, failures in checks)

    assert str(wb.Group(3, 1, 1, abelian=True).decompose()) == "Q + 4*Q(z3)"
    assert wb.multiplicative_order(10, 3, 4) == 9
    assert wb.split_r(10, 3, 4) == (1, 2)
    assert len(wb.Group.enumerate(3, 729)) == 13

    for bad in [dict(p=2, n=3, m=2, r=5), dict(p=3, n=2, m=1, r=2), dict(p=3, n=3, m=1, r=4)]:
        try:
            wb.Group(**bad)
        except wb.ValidationError:
            pass
        else:
            raise AssertionError(f"accepted {bad}")
    try:
        wb.Group(3, 6, 3, s=2).characters()
    except wb.SizeBoundError:
        pass
    else:
        raise AssertionError("size bound not enforced")

    print("pywedderburn smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
