from src.commands.utils.documents import linking_document
from src.commands.utils.placespec import parse_place_list, resolve_places
from src.commands.utils.utils import CLIResult, Output, Timer
from src.mildp.arith.classgroup import build_class_group
from src.mildp.arith.quadfield import make_field
from src.mildp.presentation.linking import build_linking_data, label_str
from src.mildp.presentation.mildness import export_presentation


def handle_linking(args) -> CLIResult:
    """CLI handler for linking command."""
    field = make_field(args.d)
    S = resolve_places(field, parse_place_list(args.places))
    with Timer("Linking data") as timer:
        cl = build_class_group(field, args.p, S)
        L = build_linking_data(field, args.p, S, cl)

    if args.json:
        Output.document(linking_document(L, cl, S))
        return CLIResult(success=True)

    Output.section(f"Linking numbers mod {args.p} over {field}")
    Output.field("a1", f"{cl.a1} (q1 = {cl.q1})")
    Output.field("v0", f"{L.v0.describe()} [{L.v0}]")
    Output.field("S", ", ".join(str(v) for v in L.S))

    Output.section("Residues")
    for record in L.residues:
        Output.print(f"  {record.element:>16} @ {record.place:<8} = {record.residue:<8} dlog {record.dlog}")

    Output.table("z(1, v)", ["z"], L.S, lambda _, v: L.z1[v], label=label_str)
    Output.table("l(w, v)  [column 1: l(w, 1)]", L.S, L.labels, L.l, label=label_str)
    Output.table("corrected l(w, v)", L.S, L.labels, L.l_tilde, label=label_str)

    presentation = export_presentation(L)
    Output.section("Presentation")
    Output.field("generators", ", ".join(presentation.generators))
    Output.field("relations", presentation.r)
    Output.field("Koch type", presentation.koch_type)
    timer.report(args.verbose)
    return CLIResult(success=True)
