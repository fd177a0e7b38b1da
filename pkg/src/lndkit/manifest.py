"""Manifest loading, validation, and object construction.

A manifest is a TOML document with string-encoded polynomials and field
elements. The full grammar:

    [field]
    base = "Q"              # or a prime number for GF(p)
    ratfunc = ["t"]         # optional transcendental generators, in order
    [[field.extensions]]    # optional algebraic extensions, in order
    name = "i"
    minpoly = "Z^2 + 1"     # monic in Z over the tower built so far

    [ring]
    vars = ["x", "y", "z"]
    relations = ["x*y + z^2 + 1"]     # may be empty
    [ring.assert]           # optional assertions, recorded in reports
    domain = true
    dimension = 2

    [derivations.NAME]      # one table per derivation, document order kept
    x = "0"                 # one entry per ring variable
    y = "-2*z"
    z = "x"
    lnd = "certify"         # "certify" (default) or "asserted"
    lnd_bound = 64          # optional certification bound

    [[points]]              # optional explicit points
    label = "base"          # optional
    ratfunc = ["u"]         # optional extra layers for this point's field
    [[points.extensions]]   # optional, same shape as field.extensions
    ...
    x = "1"                 # one coordinate per ring variable
    y = "-1"
    z = "0"

    [[families]]            # optional parametric point recipes
    label = "slice"         # optional
    parameters = ["c", "s"]
    low = -9                # optional draw range for parameters
    high = 9
    x = "c"                 # one expression per ring variable
    y = "-(s^2 + 1)/c"
    z = "s"

    [run]                   # optional; command-line flags take precedence
    command = "pipeline"
    seed = 0
    bound = 64              # nilpotency / exponential bound
    trials = 64             # reduction attempts
    method = "both"         # point test: jacobian | elimination | both
    generic_method = "jacobian"
    kernel_degree_bound = 2
    samples_per_family = 3
    sequence = ["D1", "D2"] # embedding order; default: document order
    sequence_repeat = 1
    max_sequence_repeat = 3
    slice_degree = 3
    derivation = "D1"       # target for single-derivation commands
    parameter = "T"         # exponential parameter (name, or an element)
    lambdas = ["0", "1", "t"]        # xk-conic inputs
    assume_trivial_kernel_field = false
    with_certificate = true

Unknown keys anywhere are rejected; every error carries the dotted
location of the offending entry.
"""

from __future__ import annotations

import hashlib

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .derivations import certify_lnd, check_derivation
from .embeddings import PointFamily, PointSpec
from .errors import AssumptionViolation, InputError, LndkitError, ManifestError
from .fields import prime_field, rationals
from .groebner import RingPresentation
from .polynomials import extend_field, parse_field_element, parse_minpoly

RUN_DEFAULTS = {
    "command": "",
    "seed": 0,
    "bound": 64,
    "trials": 64,
    "method": "both",
    "generic_method": "jacobian",
    "kernel_degree_bound": 2,
    "samples_per_family": 3,
    "sequence": None,
    "sequence_repeat": 1,
    "max_sequence_repeat": 3,
    "slice_degree": 3,
    "derivation": None,
    "parameter": "T",
    "lambdas": [],
    "assume_trivial_kernel_field": False,
    "with_certificate": True,
}

_METHODS = ("jacobian", "elimination", "both")


def load_manifest_bytes(data: bytes):
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ManifestError("manifest is not valid UTF-8: %s" % e)
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ManifestError("manifest does not parse: %s" % e)


def load_manifest(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise ManifestError("cannot read manifest %s: %s" % (path, e))
    return load_manifest_bytes(data), data


# -- validation helpers ------------------------------------------------------


def _expect_table(val, loc):
    if not isinstance(val, dict):
        raise ManifestError("expected a table", loc)
    return val

def _expect_str(val, loc):
    if not isinstance(val, str):
        raise ManifestError("expected a string", loc)
    return val

def _expect_int(val, loc):
    if isinstance(val, bool) or not isinstance(val, int):
        raise ManifestError("expected an integer", loc)
    return val

def _expect_bool(val, loc):
    if not isinstance(val, bool):
        raise ManifestError("expected true or false", loc)
    return val

def _expect_str_list(val, loc):
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise ManifestError("expected an array of strings", loc)
    return list(val)

def _reject_unknown(tbl, allowed, loc):
    for key in tbl:
        if key not in allowed:
            raise ManifestError(
                "unknown key %r (allowed: %s)" % (key, ", ".join(sorted(allowed))),
                "%s.%s" % (loc, key) if loc else key,
            )


def _wrap(loc):
    """Context manager turning package errors into located manifest errors.

    Assumption violations pass through untouched: a disproved assertion
    (a reducible minimal polynomial, a wrong dimension) is not a syntax
    problem and must keep its own exit-code class."""

    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if (
                exc is not None
                and isinstance(exc, LndkitError)
                and not isinstance(exc, (ManifestError, AssumptionViolation))
            ):
                raise ManifestError(str(exc), loc) from exc
            return False

    return _Ctx()


# -- builders ----------------------------------------------------------------


def build_field(tbl, loc="field"):
    tbl = _expect_table(tbl, loc)
    _reject_unknown(tbl, {"base", "ratfunc", "extensions"}, loc)
    if "base" not in tbl:
        raise ManifestError("missing key 'base'", loc)
    base = tbl["base"]
    if base == "Q":
        tower = rationals()
    elif isinstance(base, int) and not isinstance(base, bool):
        with _wrap(loc + ".base"):
            tower = prime_field(base)
    else:
        raise ManifestError(
            "base must be \"Q\" or a prime number", loc + ".base"
        )
    for i, name in enumerate(_expect_str_list(tbl.get("ratfunc", []), loc + ".ratfunc")):
        with _wrap("%s.ratfunc[%d]" % (loc, i)):
            tower = tower.with_ratfunc(name)
    exts = tbl.get("extensions", [])
    if not isinstance(exts, list):
        raise ManifestError("expected an array of tables", loc + ".extensions")
    for i, ext in enumerate(exts):
        eloc = "%s.extensions[%d]" % (loc, i)
        ext = _expect_table(ext, eloc)
        _reject_unknown(ext, {"name", "minpoly"}, eloc)
        if "name" not in ext or "minpoly" not in ext:
            raise ManifestError("needs both 'name' and 'minpoly'", eloc)
        name = _expect_str(ext["name"], eloc + ".name")
        mp_text = _expect_str(ext["minpoly"], eloc + ".minpoly")
        with _wrap(eloc + ".minpoly"):
            mp = parse_minpoly(mp_text, tower)
            tower = extend_field(tower, name, mp)
    return tower


def build_ring(tbl, field, loc="ring"):
    tbl = _expect_table(tbl, loc)
    _reject_unknown(tbl, {"vars", "relations", "assert"}, loc)
    if "vars" not in tbl:
        raise ManifestError("missing key 'vars'", loc)
    vars = tuple(_expect_str_list(tbl["vars"], loc + ".vars"))
    relations = _expect_str_list(tbl.get("relations", []), loc + ".relations")
    asserts = _expect_table(tbl.get("assert", {}), loc + ".assert")
    _reject_unknown(asserts, {"domain", "dimension"}, loc + ".assert")
    domain = _expect_bool(asserts.get("domain", False), loc + ".assert.domain")
    dimension = None
    if "dimension" in asserts:
        dimension = _expect_int(asserts["dimension"], loc + ".assert.dimension")
    with _wrap(loc):
        return RingPresentation(
            field,
            vars,
            relations,
            assume_domain=domain,
            asserted_dimension=dimension,
        )


def build_derivations(tbl, ring, default_bound, loc="derivations"):
    tbl = _expect_table(tbl, loc)
    out = []
    statuses = {}
    for name, body in tbl.items():
        dloc = "%s.%s" % (loc, name)
        body = _expect_table(body, dloc)
        allowed = set(ring.vars) | {"lnd", "lnd_bound"}
        _reject_unknown(body, allowed, dloc)
        values = {}
        for v in ring.vars:
            if v not in body:
                raise ManifestError("missing value for generator %r" % v, dloc)
            values[v] = _expect_str(body[v], "%s.%s" % (dloc, v))
        lnd = _expect_str(body.get("lnd", "certify"), dloc + ".lnd")
        if lnd not in ("certify", "asserted"):
            raise ManifestError(
                "lnd must be \"certify\" or \"asserted\"", dloc + ".lnd"
            )
        bound = default_bound
        if "lnd_bound" in body:
            bound = _expect_int(body["lnd_bound"], dloc + ".lnd_bound")
        with _wrap(dloc):
            D = check_derivation(ring, values, name=name)
            if lnd == "certify":
                certify_lnd(D, bound)
            else:
                D.lnd_status = "asserted"
        out.append(D)
        statuses[name] = lnd
    return out, statuses


def _point_field(body, ring, loc):
    """The point's coefficient field: the ring field plus optional layers."""
    tower = ring.field
    names = _expect_str_list(body.get("ratfunc", []), loc + ".ratfunc")
    for i, name in enumerate(names):
        with _wrap("%s.ratfunc[%d]" % (loc, i)):
            tower = tower.with_ratfunc(name)
    exts = body.get("extensions", [])
    if not isinstance(exts, list):
        raise ManifestError("expected an array of tables", loc + ".extensions")
    for i, ext in enumerate(exts):
        eloc = "%s.extensions[%d]" % (loc, i)
        ext = _expect_table(ext, eloc)
        _reject_unknown(ext, {"name", "minpoly"}, eloc)
        if "name" not in ext or "minpoly" not in ext:
            raise ManifestError("needs both 'name' and 'minpoly'", eloc)
        with _wrap(eloc + ".minpoly"):
            mp = parse_minpoly(_expect_str(ext["minpoly"], eloc + ".minpoly"), tower)
            tower = extend_field(tower, _expect_str(ext["name"], eloc + ".name"), mp)
    return tower


def build_points(lst, ring, loc="points"):
    if not isinstance(lst, list):
        raise ManifestError("expected an array of tables", loc)
    out = []
    for i, body in enumerate(lst):
        ploc = "%s[%d]" % (loc, i)
        body = _expect_table(body, ploc)
        allowed = set(ring.vars) | {"label", "ratfunc", "extensions"}
        _reject_unknown(body, allowed, ploc)
        kappa = _point_field(body, ring, ploc)
        coords = {}
        for v in ring.vars:
            if v not in body:
                raise ManifestError("missing coordinate %r" % v, ploc)
            text = _expect_str(body[v], "%s.%s" % (ploc, v))
            with _wrap("%s.%s" % (ploc, v)):
                coords[v] = parse_field_element(text, kappa)
        label = None
        if "label" in body:
            label = _expect_str(body["label"], ploc + ".label")
        with _wrap(ploc):
            out.append(PointSpec(ring, kappa, coords, label=label))
    return out


def build_families(lst, ring, loc="families"):
    if not isinstance(lst, list):
        raise ManifestError("expected an array of tables", loc)
    out = []
    for i, body in enumerate(lst):
        floc = "%s[%d]" % (loc, i)
        body = _expect_table(body, floc)
        allowed = set(ring.vars) | {"label", "parameters", "low", "high"}
        _reject_unknown(body, allowed, floc)
        if "parameters" not in body:
            raise ManifestError("missing key 'parameters'", floc)
        params = _expect_str_list(body["parameters"], floc + ".parameters")
        exprs = {}
        for v in ring.vars:
            if v not in body:
                raise ManifestError("missing expression for %r" % v, floc)
            exprs[v] = _expect_str(body[v], "%s.%s" % (floc, v))
        label = None
        if "label" in body:
            label = _expect_str(body["label"], floc + ".label")
        low = _expect_int(body.get("low", -9), floc + ".low")
        high = _expect_int(body.get("high", 9), floc + ".high")
        if low > high:
            raise ManifestError("low exceeds high", floc + ".low")
        with _wrap(floc):
            out.append(
                PointFamily(ring, ring.field, params, exprs, label=label, low=low, high=high)
            )
    return out


def build_run(tbl, derivation_names, loc="run"):
    tbl = _expect_table(tbl, loc)
    _reject_unknown(tbl, set(RUN_DEFAULTS), loc)
    run = dict(RUN_DEFAULTS)
    for key in ("seed", "bound", "trials", "kernel_degree_bound",
                "samples_per_family", "sequence_repeat", "max_sequence_repeat",
                "slice_degree"):
        if key in tbl:
            run[key] = _expect_int(tbl[key], "%s.%s" % (loc, key))
    for key in ("command", "generic_method", "parameter", "derivation"):
        if key in tbl:
            run[key] = _expect_str(tbl[key], "%s.%s" % (loc, key))
    if "method" in tbl:
        run["method"] = _expect_str(tbl["method"], loc + ".method")
    for key in ("method", "generic_method"):
        if run[key] not in _METHODS:
            raise ManifestError(
                "must be one of %s" % (", ".join(_METHODS)), "%s.%s" % (loc, key)
            )
    if "lambdas" in tbl:
        run["lambdas"] = _expect_str_list(tbl["lambdas"], loc + ".lambdas")
    if "sequence" in tbl:
        run["sequence"] = _expect_str_list(tbl["sequence"], loc + ".sequence")
        for j, nm in enumerate(run["sequence"]):
            if nm not in derivation_names:
                raise ManifestError(
                    "unknown derivation %r" % nm, "%s.sequence[%d]" % (loc, j)
                )
    for key in ("assume_trivial_kernel_field", "with_certificate"):
        if key in tbl:
            run[key] = _expect_bool(tbl[key], "%s.%s" % (loc, key))
    if run["derivation"] is not None and run["derivation"] not in derivation_names:
        raise ManifestError(
            "unknown derivation %r" % run["derivation"], loc + ".derivation"
        )
    for key, floor in (("bound", 1), ("trials", 1), ("samples_per_family", 0),
                       ("kernel_degree_bound", 0), ("sequence_repeat", 1),
                       ("slice_degree", 1)):
        if run[key] < floor:
            raise ManifestError("must be at least %d" % floor, "%s.%s" % (loc, key))
    if run["max_sequence_repeat"] < run["sequence_repeat"]:
        run["max_sequence_repeat"] = run["sequence_repeat"]
    return run


class BuiltManifest:
    """Everything a command needs, constructed and validated."""

    def __init__(self, raw, source_bytes=b""):
        raw = _expect_table(raw, "")
        _reject_unknown(
            raw, {"field", "ring", "derivations", "points", "families", "run"}, ""
        )
        if "field" not in raw:
            raise ManifestError("missing table [field]")
        if "ring" not in raw:
            raise ManifestError("missing table [ring]")
        self.field = build_field(raw["field"])
        self.ring = build_ring(raw["ring"], self.field)
        bound_default = RUN_DEFAULTS["bound"]
        if isinstance(raw.get("run"), dict) and "bound" in raw["run"]:
            bound_default = _expect_int(raw["run"]["bound"], "run.bound")
        derivations, self.lnd_statuses = build_derivations(
            raw.get("derivations", {}), self.ring, bound_default
        )
        self.derivations = tuple(derivations)
        self.points = tuple(build_points(raw.get("points", []), self.ring))
        self.families = tuple(build_families(raw.get("families", []), self.ring))
        names = tuple(D.name for D in self.derivations)
        self.run = build_run(raw.get("run", {}), names)
        self.source_bytes = source_bytes
        self.digest = hashlib.sha256(source_bytes).hexdigest()

    def derivation_named(self, name):
        for D in self.derivations:
            if D.name == name:
                return D
        raise InputError("no derivation named %r" % name)

    def sequence(self):
        """The derivation list the embedding should use, in order."""
        if self.run["sequence"] is not None:
            return [self.derivation_named(n) for n in self.run["sequence"]]
        return list(self.derivations)


def load_built(path: str) -> BuiltManifest:
    raw, data = load_manifest(path)
    return BuiltManifest(raw, data)
