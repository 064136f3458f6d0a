from src.commands.utils.documents import certificate_document
from src.commands.utils.placespec import parse_ordering, parse_place_list, resolve_places
from src.commands.utils.utils import CLIResult, Colors, Output, Timer
from src.mildp.arith.quadfield import make_field
from src.mildp.core.config import get_logger
from src.mildp.presentation.linking import label_str
from src.mildp.presentation.mildness import MildnessCertificate, certify_mild

logger = get_logger(__name__)


def _print_certificate(cert: MildnessCertificate):
    colour = Colors.GREEN if cert.certified else Colors.YELLOW
    Output.section("Mildness certificate")
    Output.field("S", ", ".join(str(v) for v in cert.S))
    Output.field("verdict", f"{colour}{cert.verdict.value}{Colors.RESET}")
    if cert.failed_stage:
        Output.field("failed stage", cert.failed_stage.value)
    if cert.linking:
        Output.field("v0", f"{cert.linking.v0.describe()} [{cert.linking.v0}]")
    Output.field("examined", f"{cert.orderings_examined} ordering(s)")

    reported = cert.reported
    if reported:
        title = "witness ordering" if cert.certified else "first ordering"
        Output.field(title, "(" + ", ".join(label_str(x) for x in reported.ordering) + ")")
        Output.field("det A", f"{reported.det} mod {cert.linking.p}")
        Output.matrix(reported.matrix)
        conditions = reported.conditions
        Output.field("conditions", f"(1) {conditions.c1}  (2) {conditions.c2}  (3) {conditions.c3}")
        Output.field("direct", f"V cup V = 0: {reported.direct.v_cup_v_vanishes}  "
                               f"det != 0: {reported.direct.det_nonzero}")
    if cert.flags:
        Output.section("Consequences")
        for name, value in cert.flags.items():
            Output.field(name, value, width=22)
    for warning in cert.warnings:
        Output.warning(warning)


def handle_certify(args) -> CLIResult:
    """CLI handler for certify command."""
    field = make_field(args.d)
    S = resolve_places(field, parse_place_list(args.places))
    ordering = parse_ordering(args.ordering, S) if args.ordering else None
    strict = not args.lenient

    with Timer("Certification") as timer:
        cert = certify_mild(field, args.p, S, ordering=ordering, strict=strict)
    logger.debug(f"[CLI] certify {[str(v) for v in S]} -> {cert.verdict.value}")

    if args.json:
        Output.document(certificate_document(cert, args.d, args.p, ordering, strict))
        return CLIResult.from_verdict(cert.certified)

    _print_certificate(cert)
    timer.report(args.verbose)
    return CLIResult.from_verdict(
        cert.certified,
        positive=f"G_S is mild for S = {{{', '.join(str(v) for v in S)}}}",
        negative="no circular ordering certifies mildness",
    )
