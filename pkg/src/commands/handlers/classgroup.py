from src.commands.utils.documents import class_group_document
from src.commands.utils.utils import CLIResult, Output, Timer
from src.mildp.arith.classgroup import build_class_group
from src.mildp.arith.quadfield import make_field
from src.mildp.core.config import get_logger

logger = get_logger(__name__)


def handle_classgroup(args) -> CLIResult:
    """CLI handler for classgroup command."""
    field = make_field(args.d)
    with Timer(f"Class group of {field}") as timer:
        cl = build_class_group(field, args.p)
    logger.debug(f"[CLI] classgroup d={args.d} p={args.p}")

    if args.json:
        Output.document(class_group_document(cl))
        return CLIResult(success=True)

    Output.section(f"Class group of {field}")
    Output.field("D", field.D)
    Output.field("h_K", cl.h_K)
    Output.field("forms", ", ".join(str(f) for f in cl.forms))
    Output.field(f"{args.p}-rank", cl.p_rank)
    Output.field("h", f"{cl.h} (prime-to-{args.p} part)")
    Output.field("a1-prime", f"{cl.frak_a1.describe()} [{cl.frak_a1}]")
    Output.field("q1", cl.q1)
    Output.field("a1", cl.a1)
    timer.report(args.verbose)
    return CLIResult(success=True)
