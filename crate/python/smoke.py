"""Smoke test for the pysechoch extension.

Build first with `cargo build -p sechoch-py`; the script copies the built
library next to a temporary `pysechoch.so` and imports it.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libpysechoch.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "pysechoch.so")
            sys.path.insert(0, str(tmp))
            import pysechoch

            return pysechoch
    sys.exit("libpysechoch.so not found; run `cargo build -p sechoch-py`")


def main():
    ps = load()

    t2 = ps.fixture("T2")
    assert json.loads(t2)["A"]["dim"] == 2
    assert len(ps.triple_id(t2)) == 16

    dims = ps.cohomology_dims(t2, 2)
    assert [d[4] for d in dims] == [2, 1, 1], dims

    f = ps.sample_cocycle(t2, 1, seed=1)
    g = ps.sample_cocycle(t2, 2, seed=2)
    circle, bv, equal = ps.bracket(t2, f, g)
    assert json.loads(circle)["degree"] == 2
    assert json.loads(bv)["degree"] == 2
    assert equal

    ok, report = ps.run_verify(t2, "lemma-delta", trials=2)
    assert ok and json.loads(report)["suite"] == "lemma-delta"

    try:
        ps.cohomology_dims(ps.fixture("T4"), 5)
    except ps.ResourceCapError:
        pass
    else:
        raise AssertionError("expected ResourceCapError")

    try:
        ps.bracket(t2, '{"degree":1,"values":[[1,0],[0,0]]}', g)
    except ps.NotCocycleError:
        pass
    else:
        raise AssertionError("expected NotCocycleError")

    try:
        ps.fixture("T9")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pysechoch smoke test: ok")


if __name__ == "__main__":
    main()
