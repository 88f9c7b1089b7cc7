"""Command-line front end: ``qemhj spectrum|verify|wavefunction --config FILE --out DIR``.

Exit codes: 0 success, 2 configuration error, 3 constraint violation, 4 verification
failure.  Every failure prints exactly one ``error: ...`` line on stderr.
"""
from __future__ import annotations

import csv
import numbers
import sys
from pathlib import Path

import click

from .config import CASES, load_config
from .errors import ConfigError, QemhjError
from .pipeline import (
    SPECTRUM_COLUMNS,
    VERIFY_COLUMNS,
    row_within_tolerance,
    spectrum_rows,
    verify_rows,
    wavefunction_table,
)

__all__ = ["cli", "main", "format_value", "write_csv"]

EXIT_CONFIG, EXIT_CONSTRAINT, EXIT_VERIFY = 2, 3, 4


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, numbers.Integral)):
        return str(int(v))
    return format(float(v) + 0.0, ".17g")  # + 0.0 folds -0 into 0


def write_csv(path, columns, rows) -> Path:
    """Header plus rows (dicts keyed by column, or sequences), '\\n' line endings."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            vals = [r[c] for c in columns] if isinstance(r, dict) else list(r)
            w.writerow([format_value(v) for v in vals])
    return path


def _prepare(config, case, out):
    cfg = load_config(config, case)
    outdir = Path(out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {str(outdir)!r}: {exc.strerror}") from None
    return cfg, outdir


def _common(f):
    f = click.option("--figures", is_flag=True, help="Also render PNG figures next to the tables.")(f)
    f = click.option("--case", type=click.Choice(CASES), default=None, help="Override [run] case.")(f)
    f = click.option("--out", "out", type=click.Path(file_okay=False), default=".", show_default=True,
                     help="Output directory.")(f)
    f = click.option("--config", "config", type=click.Path(dir_okay=False), required=True,
                     help="Run configuration file.")(f)
    return f


@click.group()
def cli():
    """Closed-form spectra, residuals and finite-difference checks for mass-dependent problems."""


@cli.command()
@_common
def spectrum(config, out, case, figures):
    """Quantized parameters, energies and pole residues per level (spectrum.csv)."""
    cfg, outdir = _prepare(config, case, out)
    rows = spectrum_rows(cfg)
    path = write_csv(outdir / "spectrum.csv", SPECTRUM_COLUMNS, rows)
    if figures:
        from .report import plot_spectrum

        plot_spectrum(rows, outdir / "spectrum.png", cfg.case)
    click.echo(str(path))
    return 0


@cli.command()
@_common
def verify(config, out, case, figures):
    """Compare closed forms with the finite-difference oracle (verify.csv)."""
    cfg, outdir = _prepare(config, case, out)
    rows, ok = verify_rows(cfg)
    path = write_csv(outdir / "verify.csv", VERIFY_COLUMNS, rows)
    if figures:
        from .report import plot_verify

        plot_verify(rows, outdir / "verify.png", cfg.case)
    click.echo(str(path))
    if not ok:
        bad = [r["n"] for r in rows if not row_within_tolerance(r)]
        _error(f"verification tolerance exceeded for n={','.join(map(str, bad))}")
        return EXIT_VERIFY
    return 0


@cli.command()
@_common
@click.option("--n", "level", type=int, default=None, help="Single level (default: every configured level).")
def wavefunction(config, out, case, figures, level):
    """Closed-form phi and momentum samples on the grid (wavefunction_n{n}.csv)."""
    cfg, outdir = _prepare(config, case, out)
    levels = cfg.levels if level is None else [level]
    for n in levels:
        if n < 0:
            raise ConfigError(f"--n must be >= 0, got {n}")
        cols, data = wavefunction_table(cfg, n)
        path = write_csv(outdir / f"wavefunction_n{n}.csv", cols, data)
        if figures:
            from .report import plot_wavefunction

            plot_wavefunction(cols, data, outdir / f"wavefunction_n{n}.png", n, cfg.case)
        click.echo(str(path))
    return 0


def _error(msg):
    click.echo("error: " + " ".join(str(msg).split()), err=True)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="qemhj", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        _error(exc.format_message())
        return EXIT_CONFIG
    except click.Abort:
        _error("aborted")
        return 1
    except ConfigError as exc:
        _error(exc)
        return EXIT_CONFIG
    except QemhjError as exc:
        _error(exc)
        return EXIT_CONSTRAINT
    except ValueError as exc:
        # parameter records rejected by their constructors
        _error(f"invalid parameters: {exc}")
        return EXIT_CONFIG
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
