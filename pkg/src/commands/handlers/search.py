from src.commands.utils.documents import SearchEndDocument, search_hit_document
from src.commands.utils.utils import CLIResult, Output, Timer
from src.mildp.arith.quadfield import make_field
from src.mildp.core.config import get_logger
from src.mildp.runtime.search import SearchSpec, build_context, iter_search

logger = get_logger(__name__)


def handle_search(args) -> CLIResult:
    """CLI handler for search command; hits are printed as they are confirmed."""
    field = make_field(args.d)
    spec = SearchSpec.from_config(
        field,
        args.p,
        args.bound,
        mode=args.mode,
        max_results=args.max_results,
        workers=args.workers,
        executor=args.executor,
        checkpoint=args.checkpoint,
        cardinality=args.cardinality,
        require_example_order=not args.any_order,
    )

    count = 0
    last = None
    with Timer("Search") as timer:
        context = build_context(spec)
        Output.debug(f"{len(context.classified)} candidate places up to {spec.ell_bound}", args.verbose)
        for hit in iter_search(spec, context):
            count += 1
            last = hit.token
            if args.json:
                Output.document(search_hit_document(hit, args.d, args.p), compact=True)
            else:
                roles = "  ".join(f"{role}={v}" for role, v in zip(hit.roles, hit.position))
                Output.print(f"  [{count}] {roles}")

    truncated = spec.max_results is not None and count >= spec.max_results
    checkpoint = last if truncated else None
    logger.debug(f"[CLI] search finished with {count} hits, checkpoint={checkpoint}")

    if args.json:
        Output.document(SearchEndDocument(hits=count, checkpoint=checkpoint), compact=True)
        return CLIResult(success=True)

    timer.report(args.verbose)
    if checkpoint:
        Output.info(f"checkpoint: {checkpoint}")
    return CLIResult(success=True, message=f"{count} hit(s)" + ("" if checkpoint else ", search exhausted"))
