"""
Text formats and the command line
=================================

Rings, monoids, meadows and diagrams have a plain text format. The
``meadows`` command reads them and reports on the structure; this script
drives it in-process.
"""

import tempfile
from pathlib import Path

from meadows import dumps, loads
from meadows.cli import main
from meadows.fixtures import example2

text = dumps(example2())
print(text)
assert loads(text) == example2()

with tempfile.TemporaryDirectory() as d:
    d = Path(d)
    main(["--quiet", "fixtures", str(d)])
    print("fixture files:", sorted(p.name for p in d.iterdir())[:8], "...")
    for argv in (["check", d / "example1.meadow"],
                 ["flasque", d / "ce-pi1pi1.diagram"],
                 ["invert", d / "mr-z6.meadow", "2@top"],
                 ["--json", "check", d / "example2.meadow"]):
        print("$ meadows", " ".join(str(a) if not isinstance(a, Path) else a.name for a in argv))
        code = main([str(a) for a in argv])
        print("exit", code)
