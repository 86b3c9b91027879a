"""Smoke test for the Python extension.

Build it first:
    cargo build --release -p gradedq-py --features extension-module
then run this script from the repository root.  It copies the shared
library to a temporary directory under the module name and imports it.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    lib = ROOT / "target" / "release" / "libgradedq_py.so"
    if not lib.exists():
        sys.exit(f"missing {lib}; build the extension first")
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "gradedq_py.so")
    sys.path.insert(0, str(tmp))
    import gradedq_py

    return gradedq_py


def main():
    gq = load()
    c = gq.Calculus()
    assert c.normalize("d*a") == "a*d - (q-1)*b*g", c.normalize("d*a")
    assert c.normalize("a*d - q*b*g - (d*a - b*g)") == "0"
    assert c.diff("a", n=3) == "0"
    p = c.partials("a^2")
    assert p == {"a": "-q*a", "b": "0", "g": "0", "d": "0"}, p
    assert len(c.matrix("sigma", "b")) == 4
    ok, text = c.check("coinvariance")
    assert ok and json.loads(text)["suite"] == "coinvariance"
    try:
        gq.Calculus(p1="q3")
    except ValueError:
        pass
    else:
        raise AssertionError("bad P1 accepted")
    print("smoke test passed:", repr(c))


if __name__ == "__main__":
    main()
