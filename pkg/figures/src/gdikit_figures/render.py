"""Render the sweep CSVs produced by the gdikit command line.

Three figure kinds, one per CSV schema:

  epsilon   plasticity vs exploration rate, one line per arrow with a shaded
            confidence band (a single-row file degenerates to one marker)
  qinit     plasticity (blue), empowerment (orange), and their sum (green) vs
            the initial Q value, with the bound as a grey dashed line
  corridor  plasticity and empowerment per room

The module never computes measures; it plots exactly what the CSV says, so
identical input bytes produce identical figures.  Output format follows the
file extension (png, pdf, svg, ...).

Invocation: ``render --kind {epsilon,qinit,corridor} --in <csv> --out <image>``.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMAS = {
    "epsilon": ["epsilon", "arrow", "plasticity_bits", "ci_low", "ci_high", "method", "seed"],
    "qinit": [
        "q_init",
        "plasticity_bits",
        "empowerment_bits",
        "sum_bits",
        "bound_bits",
        "method",
        "seed",
    ],
    "corridor": ["room", "plasticity_bits", "empowerment_bits"],
}

# The caption palette: plasticity blue, empowerment orange, sum green,
# bound grey-dashed.
BLUE, ORANGE, GREEN, GREY = "#1f77b4", "#ff7f0e", "#2ca02c", "#7f7f7f"


class SchemaError(ValueError):
    """CSV header does not match the figure kind's schema."""


@dataclass(frozen=True)
class FigureSpec:
    in_csv: str
    out_image: str
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in SCHEMAS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def load_rows(path: str, kind: str) -> list[dict[str, str]]:
    """Parse the CSV, skipping leading # comment lines and checking the header."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty file") from None
    expected = SCHEMAS[kind]
    if header != expected:
        for i, want in enumerate(expected):
            got = header[i] if i < len(header) else "<missing>"
            if got != want:
                raise SchemaError(
                    f"{path}: column {i + 1} is {got!r}, expected {want!r} for kind {kind!r}"
                )
        raise SchemaError(f"{path}: {len(header) - len(expected)} unexpected trailing columns")
    return [dict(zip(expected, row)) for row in reader if row]


def _epsilon_axes(ax, rows) -> None:
    arrows = sorted({r["arrow"] for r in rows})
    for arrow, color in zip(arrows, (BLUE, ORANGE, GREEN)):
        sub = [r for r in rows if r["arrow"] == arrow]
        xs = [float(r["epsilon"]) for r in sub]
        ys = [float(r["plasticity_bits"]) for r in sub]
        lo = [float(r["ci_low"]) for r in sub]
        hi = [float(r["ci_high"]) for r in sub]
        if len(sub) == 1:
            ax.plot(xs, ys, "o", color=color, label=arrow)
        else:
            ax.plot(xs, ys, color=color, label=arrow)
            ax.fill_between(xs, lo, hi, color=color, alpha=0.25, linewidth=0)
    ax.set_xlabel("exploration rate")
    ax.set_ylabel("plasticity (bits)")
    ax.legend(title="arrow")


def _qinit_axes(ax, rows) -> None:
    xs = [float(r["q_init"]) for r in rows]
    ax.plot(xs, [float(r["plasticity_bits"]) for r in rows], color=BLUE, label="plasticity")
    ax.plot(xs, [float(r["empowerment_bits"]) for r in rows], color=ORANGE, label="empowerment")
    ax.plot(xs, [float(r["sum_bits"]) for r in rows], color=GREEN, label="sum")
    for bound in sorted({float(r["bound_bits"]) for r in rows}):
        ax.axhline(bound, color=GREY, linestyle="--", label="bound")
    ax.set_xlabel("initial Q value")
    ax.set_ylabel("bits")
    ax.legend()


def _corridor_axes(ax, rows) -> None:
    xs = [int(r["room"]) for r in rows]
    ax.plot(xs, [float(r["plasticity_bits"]) for r in rows], "o-", color=BLUE, label="plasticity")
    ax.plot(xs, [float(r["empowerment_bits"]) for r in rows], "o-", color=ORANGE, label="empowerment")
    ax.set_xlabel("room")
    ax.set_ylabel("bits")
    ax.set_xticks(xs)
    ax.legend()


def build_figure(spec: FigureSpec):
    """The figure for a spec, not yet written to disk."""
    rows = load_rows(spec.in_csv, spec.kind)
    fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
    if spec.kind == "epsilon":
        _epsilon_axes(ax, rows)
    elif spec.kind == "qinit":
        _qinit_axes(ax, rows)
    else:
        _corridor_axes(ax, rows)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> None:
    fig = build_figure(spec)
    try:
        fig.savefig(spec.out_image, metadata=_stable_metadata(spec.out_image))
    finally:
        plt.close(fig)


def _stable_metadata(path: str) -> dict | None:
    # PDF and SVG backends stamp a creation date by default, which would make
    # repeated renders differ byte-for-byte.
    if path.endswith(".pdf"):
        return {"CreationDate": None}
    if path.endswith(".svg"):
        return {"Date": None}
    return None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="render", description=__doc__.split("\n")[0])
    parser.add_argument("--kind", choices=sorted(SCHEMAS), required=True)
    parser.add_argument("--in", dest="in_csv", required=True, metavar="CSV")
    parser.add_argument("--out", dest="out_image", required=True, metavar="IMAGE")
    args = parser.parse_args(argv)
    try:
        render(FigureSpec(in_csv=args.in_csv, out_image=args.out_image, kind=args.kind))
    except SchemaError as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
