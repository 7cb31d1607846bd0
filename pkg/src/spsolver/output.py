"""Deterministic delimited output.

Every numeric cell is written in scientific notation with 17 significant
digits, so identical runs produce byte-identical files; nothing time- or
environment-dependent belongs in a data file (wall times go to the summary).
"""

import numpy as np


def format_float(x) -> str:
    return f"{float(x):.16e}"


def write_csv(path, header, columns) -> None:
    """Write columns of equal length under a comma-separated header."""
    columns = [np.atleast_1d(np.asarray(c)) for c in columns]
    n = len(columns[0])
    if any(len(c) != n for c in columns):
        raise ValueError("csv columns must share one length")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(format_float(c[i]) for c in columns))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_phi_csv(path, r, phi, u) -> None:
    write_csv(path, ["r", "phi_g", "u"], [r, phi, u])


def write_observables_csv(path, trace) -> None:
    write_csv(
        path,
        ["t", "mass", "energy", "psi0_abs"],
        [trace.times, trace.masses, trace.energies, trace.psi_origin_abs],
    )


def write_snapshot_csv(path, r, psi) -> None:
    psi = np.asarray(psi, dtype=complex)
    write_csv(
        path,
        ["r", "abs_psi", "re_psi", "im_psi"],
        [r, np.abs(psi), psi.real, psi.imag],
    )


def write_sweep_csv(path, rows) -> None:
    """rows: iterable of (h_r, sup_error, l2_error, energy, seconds)."""
    lines = ["h_r,sup_error,l2_error,energy,seconds"]
    for row in rows:
        lines.append(",".join(format_float(x) for x in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_summary(path, lines) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
