"""Write q-expansions of the classical forms to a directory, one file per form.

    python3 scripts/dump_forms.py out/ --order 30
"""
import argparse
from pathlib import Path

from modpde.forms import FORM_NAMES, FormSpec, build_form
from modpde.series import dump


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir", type=Path)
    p.add_argument("--order", type=int, default=30)
    args = p.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name in FORM_NAMES:
        value = build_form(FormSpec(name, args.order))
        if isinstance(value, tuple):
            text = "# h\n" + dump(value[0]) + "\n# t\n" + dump(value[1])
        else:
            text = dump(value)
        (args.outdir / f"{name}.txt").write_text(text + "\n")
        print(f"{name}: {args.order + 1} terms")


if __name__ == "__main__":
    main()
