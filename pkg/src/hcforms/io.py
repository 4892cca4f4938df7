"""Instance documents and deterministic report emission.

An instance document is JSON text describing either an explicit algebra
(dimension, optional basis labels, bracket triples, the two structure
matrices, optionally K, a gram matrix and a (1,0)-coframe) or a reference
to a shipped family with its parameters — never both.  Every scalar is
exact: rationals are ``"p/q"`` strings or integers, complex scalars are
``{"re": "p/q", "im": "p/q"}`` objects.  Floating-point literals anywhere
in the text are rejected outright.

Parsing is purely structural.  Mathematical axioms (Jacobi, the
quaternion relations, coframe and gram validity, integrability) are
checked when the document is *realized*, so a well-formed document whose
I fails to square to minus the identity parses fine and is rejected
downstream with the precise mathematical reason.

Reports serialize to three formats: ``json`` (canonical, sorted keys),
``table`` (plain ``key: value`` lines) and ``tex`` (tabular summaries).
Emission is deterministic — the same report always yields the same bytes
— and re-verifies stored claims: representatives are re-checked closed,
exactness certificates are re-applied, dimensions are recounted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import (
    CohomologyGroup,
    JbarSubgroupReport,
    verify_eigen_facts,
    verify_group,
)
from .errors import (
    BadParameters,
    NonRationalLiteral,
    ParseError,
    SchemaError,
)
from .exact import GaussianRational, ONE, ZERO, parse_rational
from .families import (
    FIELD_TAG,
    SCOPE,
    AnalysisReport,
    FamilyInstance,
    SweepResult,
    build_family,
)
from .hypercomplex import HypercomplexInstance, check_quaternion_triple
from .liealg import LieAlgebra, basis_tuples
from .linalg import mat_vec
from .metric import HktReport, HyperhermitianMetric, build_metric

FORMATS = ("json", "table", "tex")

_DOCUMENT_KEYS = frozenset(
    {"dimension", "basis", "brackets", "I", "J", "K", "gram",
     "coframe", "family"})
_EXPLICIT_KEYS = frozenset(
    {"dimension", "basis", "brackets", "I", "J", "K", "coframe"})
_REQUIRED_EXPLICIT = ("dimension", "brackets", "I", "J")


# ---- scalar and matrix parsing ----------------------------------------------

def _reject_float(text):
    raise NonRationalLiteral(
        f"floating-point literal {text!r} rejected; write an exact 'p/q'")


def _fraction(value, where: str) -> Fraction:
    """An exact rational from an int or 'p/q' string; anything else fails."""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(
            f"{where}: expected an exact rational "
            f"(integer or 'p/q' string), got {type(value).__name__}")
    return parse_rational(value)


def _scalar(value, where: str) -> GaussianRational:
    """An exact complex scalar: rational, or an object with re/im parts."""
    if isinstance(value, dict):
        extra = set(value) - {"re", "im"}
        if extra:
            raise SchemaError(
                f"{where}: unknown keys in complex scalar: {sorted(extra)}")
        return GaussianRational(_fraction(value.get("re", 0), where + ".re"),
                                _fraction(value.get("im", 0), where + ".im"))
    return GaussianRational(_fraction(value, where), Fraction(0))


def _real_matrix(value, n: int, where: str):
    if not isinstance(value, list) or len(value) != n:
        raise SchemaError(f"{where}: expected {n} rows")
    rows = []
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{where}[{r}]: expected {n} entries")
        rows.append(tuple(
            GaussianRational(_fraction(c, f"{where}[{r}][{k}]"), Fraction(0))
            for k, c in enumerate(row)))
    return tuple(rows)


def _scalar_str(value: GaussianRational):
    """JSON form of one scalar: 'p/q' when real, {re, im} otherwise."""
    return value.to_json()


# ---- the document -----------------------------------------------------------

@dataclass(frozen=True)
class InstanceDocument:
    """Parsed, structurally validated input; no mathematics checked yet.

    Exactly one of the two sources is populated: a family reference
    (``family_id`` with its parameters) or explicit data (``dimension``,
    ``brackets``, ``I``, ``J``, with the optional extras).  A gram matrix
    may accompany either source.
    """

    family_id: str | None = None
    family_parameters: tuple = ()
    dimension: int | None = None
    basis: tuple | None = None
    brackets: tuple = ()
    I: tuple | None = None
    J: tuple | None = None
    K: tuple | None = None
    gram: tuple | None = None
    coframe: tuple | None = None


def parse_instance(text: str) -> InstanceDocument:
    """Parse document text; structural errors only, no algebra checks."""
    try:
        raw = json.loads(text, parse_float=_reject_float,
                         parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    return document_from_obj(raw)


def load_instance(path) -> InstanceDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance(text)


def document_from_obj(raw) -> InstanceDocument:
    """Structural validation of a decoded document object."""
    if not isinstance(raw, dict):
        raise SchemaError("document must be a JSON object")
    unknown = set(raw) - _DOCUMENT_KEYS
    if unknown:
        raise SchemaError(f"unknown document keys: {sorted(unknown)}")
    has_family = "family" in raw
    explicit = sorted(set(raw) & _EXPLICIT_KEYS)
    if has_family and explicit:
        raise SchemaError(
            "a document provides either a family reference or explicit "
            f"algebra data, not both (found family plus {explicit})")
    if has_family:
        gram = raw.get("gram")
        fam = raw["family"]
        if not isinstance(fam, dict):
            raise SchemaError("family: expected an object")
        extra = set(fam) - {"id", "parameters"}
        if extra:
            raise SchemaError(f"family: unknown keys {sorted(extra)}")
        fam_id = fam.get("id")
        if not isinstance(fam_id, str):
            raise SchemaError("family.id: expected a string")
        params = fam.get("parameters", {})
        if not isinstance(params, dict):
            raise SchemaError("family.parameters: expected an object")
        pairs = tuple(sorted(
            (name, _fraction(value, f"family.parameters.{name}"))
            for name, value in params.items()))
        gram_mat = None
        if gram is not None:
            # the shipped families are eight-dimensional
            gram_mat = _real_matrix(gram, 8, "gram")
        return InstanceDocument(family_id=fam_id, family_parameters=pairs,
                                gram=gram_mat)

    missing = [key for key in _REQUIRED_EXPLICIT if key not in raw]
    if missing:
        raise SchemaError(f"missing required keys: {missing}")
    dim = raw["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError("dimension: expected a positive integer")

    basis = None
    if "basis" in raw:
        value = raw["basis"]
        if (not isinstance(value, list) or len(value) != dim
                or not all(isinstance(b, str) for b in value)):
            raise SchemaError(f"basis: expected {dim} label strings")
        basis = tuple(value)

    brackets_raw = raw["brackets"]
    if not isinstance(brackets_raw, list):
        raise SchemaError("brackets: expected a list of [i, j, coeffs]")
    brackets = []
    for b, entry in enumerate(brackets_raw):
        where = f"brackets[{b}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise SchemaError(f"{where}: expected [i, j, coeffs]")
        i, j, coeffs = entry
        if any(isinstance(x, bool) or not isinstance(x, int) for x in (i, j)):
            raise SchemaError(f"{where}: indices must be integers")
        if not isinstance(coeffs, list) or len(coeffs) != dim:
            raise SchemaError(f"{where}: expected {dim} coefficients")
        vec = tuple(
            GaussianRational(_fraction(c, f"{where}[2][{k}]"), Fraction(0))
            for k, c in enumerate(coeffs))
        brackets.append((i, j, vec))
    brackets.sort(key=lambda entry: (entry[0], entry[1]))

    I = _real_matrix(raw["I"], dim, "I")
    J = _real_matrix(raw["J"], dim, "J")
    K = _real_matrix(raw["K"], dim, "K") if "K" in raw else None
    gram = _real_matrix(raw["gram"], dim, "gram") if "gram" in raw else None

    coframe = None
    if "coframe" in raw:
        value = raw["coframe"]
        if not isinstance(value, list) or len(value) != dim // 2:
            raise SchemaError(f"coframe: expected {dim // 2} rows")
        rows = []
        for r, row in enumerate(value):
            if not isinstance(row, list) or len(row) != dim:
                raise SchemaError(f"coframe[{r}]: expected {dim} entries")
            rows.append(tuple(_scalar(c, f"coframe[{r}][{k}]")
                              for k, c in enumerate(row)))
        coframe = tuple(rows)

    return InstanceDocument(dimension=dim, basis=basis,
                            brackets=tuple(brackets), I=I, J=J, K=K,
                            gram=gram, coframe=coframe)


def document_to_dict(doc: InstanceDocument) -> dict:
    """Canonical JSON-ready form of a document; parse/emit round-trips."""
    out: dict = {}
    if doc.family_id is not None:
        fam: dict = {"id": doc.family_id}
        if doc.family_parameters:
            fam["parameters"] = {name: str(value)
                                 for name, value in doc.family_parameters}
        out["family"] = fam
    else:
        out["dimension"] = doc.dimension
        if doc.basis is not None:
            out["basis"] = list(doc.basis)
        out["brackets"] = [
            [i, j, [_scalar_str(c) for c in coeffs]]
            for i, j, coeffs in doc.brackets]
        out["I"] = [[_scalar_str(c) for c in row] for row in doc.I]
        out["J"] = [[_scalar_str(c) for c in row] for row in doc.J]
        if doc.K is not None:
            out["K"] = [[_scalar_str(c) for c in row] for row in doc.K]
        if doc.coframe is not None:
            out["coframe"] = [[_scalar_str(c) for c in row]
                              for row in doc.coframe]
    if doc.gram is not None:
        out["gram"] = [[_scalar_str(c) for c in row] for row in doc.gram]
    return out


def emit_document(doc: InstanceDocument) -> str:
    return json.dumps(document_to_dict(doc), sort_keys=True, indent=2) + "\n"


# ---- realization: the semantic step -----------------------------------------

@dataclass(frozen=True)
class Realized:
    """A document carried through every mathematical validity check."""

    document: InstanceDocument
    instance: HypercomplexInstance
    metric: HyperhermitianMetric
    family: FamilyInstance | None


def realize(doc: InstanceDocument) -> Realized:
    """Build and validate the instance a document describes.

    This is where mathematics happens: Jacobi, the quaternion relations,
    coframe and gram admissibility, and — because the hyperhermitian
    metric construction only exists for the integrable calculus —
    vanishing Nijenhuis tensors.  Each failure surfaces as the precise
    validation error, in that order.
    """
    if doc.family_id is not None:
        fam = build_family(doc.family_id, dict(doc.family_parameters),
                           gram=[list(r) for r in doc.gram]
                           if doc.gram is not None else None)
        return Realized(document=doc, instance=fam.instance,
                        metric=fam.metric, family=fam)
    g = LieAlgebra(doc.dimension,
                   [(i, j, list(coeffs)) for i, j, coeffs in doc.brackets],
                   labels=doc.basis)
    triple = check_quaternion_triple(
        g, [list(r) for r in doc.I], [list(r) for r in doc.J],
        [list(r) for r in doc.K] if doc.K is not None else None)
    coframe = [list(r) for r in doc.coframe] if doc.coframe is not None \
        else None
    instance = HypercomplexInstance(g, triple, coframe=coframe)
    gram = [list(r) for r in doc.gram] if doc.gram is not None else \
        [[ONE if r == c else ZERO for c in range(g.dim)]
         for r in range(g.dim)]
    metric = build_metric(instance, gram)
    return Realized(document=doc, instance=instance, metric=metric,
                    family=None)


# ---- report documents --------------------------------------------------


def _family_ref(realized: Realized):
    if realized.family is None:
        return None
    return {"id": realized.family.family_id,
            "parameters": {name: str(value) for name, value
                           in sorted(realized.family.parameters.items())}}


def validate_document(realized: Realized) -> dict:
    return {
        "command": "validate",
        "valid": True,
        "dimension": realized.instance.n,
        "family": _family_ref(realized),
        "integrable": realized.instance.is_integrable,
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


def _generator_entries(report: JbarSubgroupReport) -> list:
    out = []
    for fact in report.generator_facts:
        out.append({
            "label": fact.label,
            "closed": fact.closed,
            "exact": fact.exact,
            "coords": [_scalar_str(c) for c in fact.coords],
            "primitive": [_scalar_str(c) for c in fact.primitive]
            if fact.primitive is not None else None,
        })
    return out


def _jbar_entry(instance: HypercomplexInstance,
                report: JbarSubgroupReport) -> dict:
    verify_eigen_facts(instance, report)
    return {
        "source": report.source,
        "p": report.p,
        "real_dim_plus": report.real_dim_plus,
        "real_dim_minus": report.real_dim_minus,
        "pure_over_R": report.pure_over_R,
        "full_over_R": report.full_over_R,
        "generators": _generator_entries(report),
    }


def analysis_document(realized: Realized, report: AnalysisReport) -> dict:
    """Serialize a classification; every stored claim is re-verified."""
    instance = realized.instance
    dims = {}
    for group in report.cohomology:
        verify_group(instance, group)
        dims[group.kind] = group.dim
    hkt: HktReport = report.hkt
    sl = report.sl
    predicates = {
        "integrable": {
            "value": report.integrable,
            "evidence": "vanishing Nijenhuis tensors for I, J and K",
        },
        "abelian_structure": {
            "value": report.abelian_structure,
            "evidence": "every structure operator preserves all brackets",
        },
        "nilpotent": {
            "value": report.nilpotent,
            "evidence": "the lower central series terminates at zero",
        },
        "unimodular": {
            "value": report.unimodular,
            "evidence": "every adjoint operator is traceless",
        },
        "hkt": {
            "value": hkt.hkt,
            "evidence": "holomorphic closedness and torsion comparison "
                        "computed independently and agreeing",
            "holomorphic_closed": hkt.holomorphic_closed,
            "torsions_equal": hkt.torsions_equal,
        },
        "hyperkahler": {
            "value": report.hyperkahler,
            "evidence": "all three fundamental two-forms are d-closed",
        },
        "sl": {
            "value": sl.sl,
            "evidence": "a closed trivializing top form exists",
            "top_form_closed": sl.top_form_closed,
            "trace_value": str(sl.trace_value)
            if sl.trace_value is not None else None,
            "methods_agree": sl.methods_agree,
        },
    }
    block = None
    if report.block_form is not None:
        bf = report.block_form
        block = {
            "a": _scalar_str(bf.a),
            "a11": _scalar_str(bf.a11),
            "v": [_scalar_str(c) for c in bf.v],
            "f_tilde": [[_scalar_str(c) for c in row] for row in bf.f_tilde],
        }
    return {
        "command": "analyze",
        "instance": document_to_dict(realized.document),
        "dimension": report.dimension,
        "family": _family_ref(realized),
        "predicates": predicates,
        "block_form": block,
        "cohomology": {"p": 2, "dims": dims},
        "jbar": {
            "dolbeault": _jbar_entry(instance, report.jbar),
            "bott-chern": _jbar_entry(instance, report.jbar_bott_chern),
        },
        "closed_nonexact_imaginary_dim": report.closed_nonexact_imaginary_dim,
        "warnings": list(report.warnings),
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


def cohomology_document(realized: Realized, group: CohomologyGroup) -> dict:
    verify_group(realized.instance, group)
    return {
        "command": "cohomology",
        "kind": group.kind,
        "p": group.p,
        "dim": group.dim,
        "representatives": [[_scalar_str(c) for c in rep]
                            for rep in group.representative_basis],
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


def _torsion_entry(instance: HypercomplexInstance, coords) -> list:
    tuples3, _ = basis_tuples(instance.n, 3)
    return [[list(tuples3[k]), _scalar_str(c)]
            for k, c in enumerate(coords) if c]


def hkt_document(realized: Realized, report: HktReport) -> dict:
    return {
        "command": "hkt",
        "hkt": report.hkt,
        "holomorphic_closed": report.holomorphic_closed,
        "torsions_equal": report.torsions_equal,
        "torsion_I": _torsion_entry(realized.instance, report.torsion_I),
        "torsion_J": _torsion_entry(realized.instance, report.torsion_J),
        "torsion_K": _torsion_entry(realized.instance, report.torsion_K),
        "family": _family_ref(realized),
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


def sl_document(realized: Realized, report) -> dict:
    return {
        "command": "sl",
        "sl": report.sl,
        "top_form_closed": report.top_form_closed,
        "trace_value": str(report.trace_value)
        if report.trace_value is not None else None,
        "trace_condition": report.trace_condition,
        "methods_agree": report.methods_agree,
        "trivializing_form": [_scalar_str(c) for c in report.trivializing_form]
        if report.trivializing_form is not None else None,
        "family": _family_ref(realized),
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


def sweep_document(result: SweepResult) -> dict:
    points = []
    for point in result.points:
        points.append({
            "parameters": {name: str(value)
                           for name, value in point.parameters},
            "hkt": point.hkt,
            "hyperkahler": point.hyperkahler,
            "sl": point.sl,
            "abelian_structure": point.abelian_structure,
            "abelian_algebra": point.abelian_algebra,
            "unimodular": point.unimodular,
            "facts": {name: value for name, value in point.facts},
        })
    summaries = []
    for summary in result.summaries:
        summaries.append({
            "name": summary.name,
            "holds": summary.holds,
            "counterexamples": [
                {name: str(value) for name, value in pt}
                for pt in summary.counterexamples],
        })
    return {
        "command": "sweep",
        "family": result.family_id,
        "grid": {name: [str(v) for v in values]
                 for name, values in result.grid},
        "point_count": len(result.points),
        "points": points,
        "summaries": summaries,
        "all_hold": result.all_hold,
        "field": FIELD_TAG,
        "scope": SCOPE,
    }


# ---- emission ---------------------------------------------------------------

_KIND_ORDER = ("dolbeault", "delJ", "bott-chern", "aeppli")
_TEX_KIND = {
    "dolbeault": r"\partial",
    "delJ": r"\partial_J",
    "bott-chern": r"\mathrm{BC}",
    "aeppli": r"\mathrm{AE}",
}


def _fmt(value) -> str:
    if value is None:
        return "(none)"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            return f"{value['re']}+{value['im']}i"
        return ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(value.items()))
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _family_line(ref) -> str:
    if ref is None:
        return "(explicit)"
    params = ref.get("parameters", {})
    if not params:
        return ref["id"]
    inner = ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
    return f"{ref['id']}({inner})"


def _dim_label(kind: str, p: int) -> str:
    return f"H^{{{p},0}}_{kind}"


def _table_validate(doc: dict) -> list:
    return [
        f"command: {doc['command']}",
        f"valid: {_fmt(doc['valid'])}",
        f"dimension: {doc['dimension']}",
        f"family: {_family_line(doc['family'])}",
        f"integrable: {_fmt(doc['integrable'])}",
    ]


def _table_analyze(doc: dict) -> list:
    pred = doc["predicates"]
    lines = [
        f"command: {doc['command']}",
        f"dimension: {doc['dimension']}",
        f"family: {_family_line(doc['family'])}",
        f"integrable: {_fmt(pred['integrable']['value'])}",
        f"abelian structure: {_fmt(pred['abelian_structure']['value'])}",
        f"nilpotent: {_fmt(pred['nilpotent']['value'])}",
        f"unimodular: {_fmt(pred['unimodular']['value'])}",
        f"hkt: {_fmt(pred['hkt']['value'])}",
        f"hyperkahler: {_fmt(pred['hyperkahler']['value'])}",
        f"sl: {_fmt(pred['sl']['value'])}",
        "block form: " + ("almost-abelian" if doc["block_form"] is not None
                          else "(none)"),
    ]
    p = doc["cohomology"]["p"]
    dims = doc["cohomology"]["dims"]
    for kind in _KIND_ORDER:
        if kind in dims:
            lines.append(f"{_dim_label(kind, p)}: {dims[kind]}")
    for source in ("dolbeault", "bott-chern"):
        entry = doc["jbar"][source]
        lines.append(
            f"jbar {source} (plus, minus): "
            f"({entry['real_dim_plus']}, {entry['real_dim_minus']})")
    lines.append("closed non-exact imaginary dim: "
                 f"{doc['closed_nonexact_imaginary_dim']}")
    if doc["warnings"]:
        for warning in doc["warnings"]:
            lines.append(f"warning: {warning}")
    else:
        lines.append("warnings: (none)")
    return lines


def _table_cohomology(doc: dict) -> list:
    return [
        f"command: {doc['command']}",
        f"kind: {doc['kind']}",
        f"p: {doc['p']}",
        f"{_dim_label(doc['kind'], doc['p'])}: {doc['dim']}",
        f"representatives: {len(doc['representatives'])}",
    ]


def _table_hkt(doc: dict) -> list:
    return [
        f"command: {doc['command']}",
        f"family: {_family_line(doc['family'])}",
        f"hkt: {_fmt(doc['hkt'])}",
        f"holomorphic form closed: {_fmt(doc['holomorphic_closed'])}",
        f"torsions equal: {_fmt(doc['torsions_equal'])}",
    ]


def _table_sl(doc: dict) -> list:
    return [
        f"command: {doc['command']}",
        f"family: {_family_line(doc['family'])}",
        f"sl: {_fmt(doc['sl'])}",
        f"top form closed: {_fmt(doc['top_form_closed'])}",
        f"trace value: {_fmt(doc['trace_value'])}",
        f"methods agree: {_fmt(doc['methods_agree'])}",
    ]


def _table_sweep(doc: dict) -> list:
    lines = [
        f"command: {doc['command']}",
        f"family: {doc['family']}",
        f"points: {doc['point_count']}",
    ]
    for summary in doc["summaries"]:
        status = "holds" if summary["holds"] else \
            f"FAILS ({len(summary['counterexamples'])} counterexamples shown)"
        lines.append(f"law {summary['name']}: {status}")
    lines.append(f"all hold: {_fmt(doc['all_hold'])}")
    return lines


_TABLES = {
    "validate": _table_validate,
    "analyze": _table_analyze,
    "cohomology": _table_cohomology,
    "hkt": _table_hkt,
    "sl": _table_sl,
    "sweep": _table_sweep,
}


def _render_table(doc: dict) -> str:
    builder = _TABLES.get(doc.get("command"))
    if builder is None:
        lines = [f"{key}: {_fmt(value)}" for key, value in sorted(doc.items())]
    else:
        lines = builder(doc)
        lines.append(f"field: {doc['field']}")
        lines.append(f"scope: {doc['scope']}")
    return "\n".join(lines) + "\n"


def _tex_escape(text: str) -> str:
    return str(text).replace("\\", r"\textbackslash{}").replace(
        "_", r"\_").replace("&", r"\&").replace("%", r"\%").replace(
        "#", r"\#").replace("{", r"\{").replace("}", r"\}")


def _tex_table(col_spec: str, header: list, rows: list,
               caption: str) -> str:
    lines = [
        r"\begin{table}[h]",
        r"\centering",
        rf"\begin{{tabular}}{{{col_spec}}}",
        r"\toprule",
        " & ".join(header) + r" \\",
        r"\midrule",
    ]
    for row in rows:
        lines.append(" & ".join(row) + r" \\")
    lines.extend([
        r"\bottomrule",
        r"\end{tabular}",
        rf"\caption{{{caption}}}",
        r"\end{table}",
    ])
    return "\n".join(lines) + "\n"


def _bool_tex(value) -> str:
    if value is None:
        return "--"
    return r"\checkmark" if value else r"$\times$"


def _tex_analyze(doc: dict) -> str:
    pred = doc["predicates"]
    rows = []
    for name, label in (
            ("integrable", "integrable"),
            ("abelian_structure", "abelian structure"),
            ("nilpotent", "nilpotent"),
            ("unimodular", "unimodular"),
            ("hkt", "HKT"),
            ("hyperkahler", r"hyperk\"ahler"),
            ("sl", r"$SL(n,\mathbb{H})$")):
        rows.append([label, _bool_tex(pred[name]["value"])])
    p = doc["cohomology"]["p"]
    for kind in _KIND_ORDER:
        if kind in doc["cohomology"]["dims"]:
            rows.append([
                rf"$\dim H^{{{p},0}}_{{{_TEX_KIND[kind]}}}$",
                str(doc["cohomology"]["dims"][kind])])
    caption = f"Analysis of {_tex_escape(_family_line(doc['family']))}."
    return _tex_table("lr", ["Invariant", "Value"], rows, caption)


def _tex_cohomology(doc: dict) -> str:
    rows = [[rf"$\dim H^{{{doc['p']},0}}_{{{_TEX_KIND[doc['kind']]}}}$",
             str(doc["dim"])]]
    return _tex_table("lr", ["Group", "Dimension"], rows,
                      f"Cohomology over {_tex_escape(doc['field'])}.")


def _tex_sweep(doc: dict) -> str:
    rows = []
    for summary in doc["summaries"]:
        rows.append([
            _tex_escape(summary["name"]),
            _bool_tex(summary["holds"]),
            str(len(summary["counterexamples"])),
        ])
    caption = (f"Equivalences for the {_tex_escape(doc['family'])} family "
               f"over {doc['point_count']} grid points.")
    return _tex_table("lcr", ["Law", "Holds", "Counterexamples"], rows,
                      caption)


def _tex_generic(doc: dict) -> str:
    skip = {"command", "representatives", "points", "instance", "jbar",
            "predicates", "block_form", "grid", "summaries", "torsion_I",
            "torsion_J", "torsion_K", "trivializing_form", "warnings"}
    rows = []
    for key, value in sorted(doc.items()):
        if key in skip:
            continue
        if isinstance(value, bool) or value is None:
            shown = _bool_tex(value)
        else:
            shown = _tex_escape(_fmt(value))
        rows.append([_tex_escape(key), shown])
    return _tex_table("lr", ["Field", "Value"],
                      rows, f"Report: {_tex_escape(doc.get('command', ''))}.")


_TEX = {
    "analyze": _tex_analyze,
    "cohomology": _tex_cohomology,
    "sweep": _tex_sweep,
}


def emit_report(doc: dict, fmt: str = "json") -> str:
    """Render a report document to deterministic text.

    ``json`` is the canonical machine format (sorted keys, two-space
    indent); ``table`` prints one ``key: value`` line per fact; ``tex``
    renders a self-contained tabular summary.
    """
    if fmt not in FORMATS:
        raise BadParameters(
            f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "table":
        return _render_table(doc)
    builder = _TEX.get(doc.get("command"), _tex_generic)
    return builder(doc)
