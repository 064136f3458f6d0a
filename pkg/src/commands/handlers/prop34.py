from src.commands.utils.documents import prop34_document
from src.commands.utils.placespec import ROLE_NAMES, parse_place_list, resolve_places
from src.commands.utils.utils import CLIResult, Output
from src.mildp.arith.classgroup import build_class_group
from src.mildp.arith.quadfield import make_field
from src.mildp.presentation.mildness import check_prop34

CONDITION_NAMES = (
    "degrees (1, 1, 2, 1)",
    "a1 singular at v0",
    "a1, varpi[v0] trivial at v2",
    "v1-v2 and v2-v3 links",
    "class linking of v0, v1, v3",
)


def handle_prop34(args) -> CLIResult:
    """CLI handler for prop34 command."""
    field = make_field(args.d)
    S = resolve_places(field, parse_place_list(args.places))
    cl = build_class_group(field, args.p, S)
    report = check_prop34(field, args.p, S, cl)

    if args.json:
        Output.document(prop34_document(report, cl))
        return CLIResult.from_verdict(report.verdict)

    Output.section("Four-place criterion")
    for role, v in zip(ROLE_NAMES, S):
        Output.field(role, f"{v.describe()} [{v}]")
    for index, (name, value) in enumerate(zip(CONDITION_NAMES, report.conditions), start=1):
        Output.print(f"  ({index}) {name:<30} {Output.mark(value)}")
    Output.section("Residues")
    for key, residue in report.residues.items():
        Output.field(key, residue, width=22)
    for warning in report.warnings:
        Output.warning(warning)

    return CLIResult.from_verdict(
        report.verdict,
        positive="all five conditions hold",
        negative="the four-place criterion does not apply",
    )
