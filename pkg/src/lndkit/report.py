"""Report assembly: line-oriented text plus a structured TOML dump.

Reports are deterministic functions of (manifest bytes, seed): no
timestamps, no filesystem paths, no environment echoes. The manifest is
identified by its sha256.
"""

from __future__ import annotations

import re

from ._version import __version__

_BARE_KEY = re.compile(r"[A-Za-z0-9_-]+\Z")


def _escape(s: str) -> str:
    out = []
    for ch in s:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def _key(k: str) -> str:
    return k if _BARE_KEY.match(k) else '"%s"' % _escape(k)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return '"%s"' % _escape(v)
    if isinstance(v, (list, tuple)):
        return "[%s]" % ", ".join(_scalar(x) for x in v)
    raise TypeError("cannot serialize %r" % (v,))


def _is_table_array(v) -> bool:
    return (
        isinstance(v, (list, tuple))
        and len(v) > 0
        and all(isinstance(x, dict) for x in v)
    )


def _emit_table(prefix, tbl, lines):
    for k, v in tbl.items():
        if isinstance(v, dict) or _is_table_array(v):
            continue
        lines.append("%s = %s" % (_key(k), _scalar(v)))
    for k, v in tbl.items():
        full = "%s.%s" % (prefix, _key(k)) if prefix else _key(k)
        if isinstance(v, dict):
            lines.append("")
            lines.append("[%s]" % full)
            _emit_table(full, v, lines)
        elif _is_table_array(v):
            for item in v:
                lines.append("")
                lines.append("[[%s]]" % full)
                _emit_table(full, item, lines)


def toml_dump(table: dict) -> str:
    """Serialize a nested dict of str/int/bool/arrays/tables, insertion
    order preserved; output is deterministic for equal input."""
    lines = []
    _emit_table("", table, lines)
    return "\n".join(lines) + "\n"


def describe_ring(ring) -> str:
    head = "%s[%s]" % (ring.field.describe(), ", ".join(ring.vars))
    rels = "; ".join(str(r) for r in ring.relations)
    return "%s / (%s)" % (head, rels) if rels else head


class Report:
    """Accumulates parallel text lines and a structured table."""

    def __init__(self, command, digest, seed):
        self.lines = []
        self.table = {
            "tool": "lndkit",
            "version": __version__,
            "command": command,
            "manifest_sha256": digest,
            "seed": seed,
        }
        self.line("lndkit %s" % __version__)
        self.line("command: %s" % command)
        self.line("manifest sha256: %s" % digest)
        self.line("seed: %d" % seed)

    def line(self, text=""):
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def toml(self) -> str:
        return toml_dump(self.table)


def assumptions_block(report: Report, manifest, include_kernel_field=False):
    """The mandatory assumptions block: domain / dimension assertions,
    extension irreducibility, per-derivation nilpotency status, and (for
    pipeline-shaped commands) the trivial-kernel-field assertion."""
    ring = manifest.ring
    report.line()
    report.line("assumptions:")
    tbl = {}
    tbl["domain"] = "asserted" if ring.assume_domain else "not-asserted"
    report.line(
        "  asserted: domain" if ring.assume_domain else "  not asserted: domain"
    )
    if ring.asserted_dimension is not None:
        tbl["dimension"] = ring.asserted_dimension
        report.line("  asserted: dimension = %d" % ring.asserted_dimension)
    exts = list(ring.field.extension_descriptions())
    for p in manifest.points:
        for pair in p.field.extension_descriptions():
            if pair not in exts:
                exts.append(pair)
    if exts:
        tbl["extensions"] = [
            {"name": name, "minpoly": mp, "status": "asserted-irreducible"}
            for name, mp in exts
        ]
        for name, mp in exts:
            report.line("  asserted-irreducible: minpoly(%s) = %s" % (name, mp))
    if manifest.derivations:
        lnd = {}
        for D in manifest.derivations:
            if isinstance(D.lnd_status, tuple):
                lnd[D.name] = "certified within bound %d" % D.lnd_status[1]
                report.line(
                    "  certified: lnd(%s) within bound %d" % (D.name, D.lnd_status[1])
                )
            else:
                lnd[D.name] = str(D.lnd_status)
                report.line("  %s: lnd(%s)" % (D.lnd_status, D.name))
        tbl["lnd"] = lnd
    if include_kernel_field:
        tbl["kernel_field"] = "asserted-trivial"
        report.line("  asserted: K_Delta = k")
    report.table["assumptions"] = tbl
    report.line()
    report.line("ring: %s" % describe_ring(ring))
    report.table["ring"] = {
        "field": ring.field.describe(),
        "vars": list(ring.vars),
        "relations": [str(r) for r in ring.relations],
    }
