"""Plain-text tables for terminal output."""

from typing import List, Optional, Sequence

from .iteration import IndexSequence
from .jump import CertificateReport, GapReport
from .morse import MorseInequalityReport, MorseTable, ParityReport
from .symplectic import N1Block, N2Block, NormalFormData, RBlock, Spectrum
from .topology import BettiTable
from .verifier import InitialIndexReport, S3Report, VerificationReport


class Colors:
    """ANSI color codes for terminal output."""

    GREEN = "\033[92m"  # passed checks
    YELLOW = "\033[93m"  # diagnostics
    CYAN = "\033[96m"  # headings
    RED = "\033[91m"  # failures
    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"


def paint(text: str, code: str, color: bool) -> str:
    return f"{code}{text}{Colors.RESET}" if color else text


def status(passed: bool, color: bool, ok: str = "ok", bad: str = "FAIL") -> str:
    return paint(ok, Colors.GREEN, color) if passed else paint(bad, Colors.RED, color)


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Left-aligned columns separated by two spaces, with a dashed rule under the header."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(_visible_len(row[k]) for row in cells) for k in range(len(headers))]
    lines = []
    for i, row in enumerate(cells):
        lines.append(
            "  ".join(c + " " * (w - _visible_len(c)) for c, w in zip(row, widths)).rstrip()
        )
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _visible_len(text: str) -> int:
    for code in (Colors.GREEN, Colors.YELLOW, Colors.CYAN, Colors.RED, Colors.RESET,
                 Colors.BOLD, Colors.DIM):
        text = text.replace(code, "")
    return len(text)


def _heading(text: str, color: bool) -> str:
    return paint(text, Colors.BOLD, color)


def _block_name(block: object) -> str:
    if isinstance(block, N1Block):
        sign = "+" if block.a > 0 else "-" if block.a < 0 else "0"
        return f"N1({block.lam:+d}, {sign})"
    if isinstance(block, RBlock):
        return f"R({block.turn})"
    if isinstance(block, N2Block):
        return f"N2({block.turn}, {'trivial' if block.trivial else 'nontrivial'})"
    return f"H({getattr(block, 'b'):.6g})"


def render_normal_form(
    nf: NormalFormData,
    height: int,
    elliptic: Optional[bool],
    spectrum: Optional[Spectrum] = None,
    color: bool = False,
) -> str:
    lines = [_heading("Splitting numbers", color)]
    lines.append(format_table(list(nf.splitting), [list(nf.splitting.values())]))
    lines.append("")
    lines.append(_heading("Blocks", color))
    lines.extend(f"  {_block_name(block)}" for block in nf.blocks)
    lines.append("")
    lines.append(f"Elliptic height e(M): {height}")
    verdict = {True: "yes", False: "no", None: "unknown (recovered angles)"}[elliptic]
    lines.append(f"Irrationally elliptic: {verdict}")
    for warning in spectrum.warnings if spectrum else []:
        lines.append(paint(f"warning: {warning}", Colors.YELLOW, color))
    return "\n".join(lines)


def render_index_sequence(seq: IndexSequence, color: bool = False) -> str:
    rows = [
        (m, value, nullity, f"{average:.4f}")
        for m, (value, nullity, average) in enumerate(
            zip(seq.values, seq.nullities, seq.averages), start=1
        )
    ]
    lines = [_heading(f"Iterates of {seq.model.name}", color)]
    lines.append(format_table(["m", "i(c^m)", "nu(c^m)", "i(c^m)/m"], rows))
    lines.append(f"Mean index: {seq.mean} ≈ {float(seq.mean):.6f}")
    return "\n".join(lines)


def render_betti(table: BettiTable, color: bool = False) -> str:
    rows = [(p, b) for p, b in enumerate(table.values)]
    return "\n".join(
        [_heading(f"Betti numbers of S^{table.n}", color), format_table(["p", "b_p"], rows)]
    )


def render_morse(
    morse: MorseTable,
    report: MorseInequalityReport,
    parity: Optional[ParityReport] = None,
    color: bool = False,
) -> str:
    rows = []
    for row in report.rows:
        rows.append(
            (
                row.degree,
                row.morse,
                row.betti,
                row.morse_alternating,
                row.betti_alternating,
                status(row.status == "ok", color, bad=row.status),
            )
        )
    lines = [_heading("Morse inequalities", color)]
    lines.append(format_table(["p", "M_p", "b_p", "alt M", "alt b", "status"], rows))
    if report.first_violation is not None:
        lines.append(paint(f"First violation at degree {report.first_violation}", Colors.RED,
                           color))
    if parity is not None:
        lines.append(
            f"Wrong-parity vanishing: {status(parity.vanishing_holds, color)}; "
            f"M_p != b_p at degrees {parity.equality_failures or 'none'}"
        )
    if morse.labels:
        lines.append(f"Iterates enumerated: {dict(zip(morse.labels, morse.bounds))}")
    return "\n".join(lines)


def render_certificate(
    report: CertificateReport, gaps: Optional[GapReport] = None, color: bool = False
) -> str:
    cert = report.certificate
    lines = [_heading("Common index jump", color)]
    lines.append(f"N = {cert.N}, M0 = {cert.m0}, iterates = {cert.iterates}")
    lines.append(f"Distinguished geodesic: {cert.distinguished}, witness angle: {cert.witness}")
    rows = [
        ("-" if r.geodesic is None else r.geodesic, r.name, status(r.passed, color), r.detail)
        for r in report.results
    ]
    lines.append(format_table(["geodesic", "condition", "status", "detail"], rows))
    if gaps is not None:
        lines.append(
            f"Index gaps (m <= {gaps.m_range}): {status(gaps.passed, color)}; "
            f"upper gap {gaps.upper_gap}, lower gap {gaps.lower_gap}"
        )
    return "\n".join(lines)


def _initial_lines(initial: InitialIndexReport, color: bool) -> List[str]:
    lines = [f"Initial indices: {initial.indices} -> {status(initial.passed, color)}"]
    lines.extend(f"  {message}" for message in initial.messages)
    return lines


def render_verification(report: VerificationReport, color: bool = False) -> str:
    lines = [_heading(f"Model set on S^{report.n} with q = {report.q}", color)]
    rows = [(m.label, m.initial_index, ", ".join(m.angles), f"{m.mean_index:.6f}")
            for m in report.models]
    lines.append(format_table(["geodesic", "i(c)", "θ/2π", "mean index"], rows))
    lines.append("")
    lines.append(f"Parity: {status(report.parity_ok, color)}")
    lines.extend(_initial_lines(report.initial, color))
    if report.certificate is not None:
        cert = report.certificate
        lines.append(f"Certificate: N = {cert.N}, iterates = {cert.iterates}, M0 = {cert.m0}")
    if report.escalations:
        lines.append(f"Escalations after window intrusion: {report.escalations}")
    if report.gaps is not None:
        lines.append(f"Index gaps: {status(report.gaps.passed, color)}")
    if report.window is not None:
        window = report.window
        lines.append(
            f"Window [{window.lower}, {window.upper}]: per geodesic {window.per_geodesic}, "
            f"total {window.total}"
        )
    if report.betti is not None:
        lines.append(f"Window Betti sum: {report.betti.total}")
    lines.append("")
    verdict_color = Colors.GREEN if report.consistent else Colors.RED
    lines.append(
        paint(
            f"Verdict: {report.verdict}, forced multiplicity {report.forced_multiplicity}",
            verdict_color,
            color,
        )
    )
    lines.extend(f"  {reason}" for reason in report.reasons)
    lines.append(paint(report.scope, Colors.DIM, color))
    lines.append(paint(report.infinite_case, Colors.DIM, color))
    return "\n".join(lines)


def render_s3(report: S3Report, color: bool = False) -> str:
    if report.preconditions:
        lines = [paint("Hypotheses not met:", Colors.YELLOW, color)]
        lines.extend(f"  {problem}" for problem in report.preconditions)
        return "\n".join(lines)
    assert report.verification is not None
    lines = [render_verification(report.verification, color)]
    if report.third_geodesic_required:
        lines.append(
            f"Two geodesics cannot account for the forced count {report.forced_multiplicity}: "
            "a third closed geodesic must exist."
        )
    return "\n".join(lines)
