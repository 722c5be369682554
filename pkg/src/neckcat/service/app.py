"""HTTP service wrapping the core library.

Every endpoint is a thin adapter around one library call, mirroring the
CLI subcommands; the check endpoints share their dispatch with the CLI,
so verdicts agree across front ends.  Run with::

    uvicorn neckcat.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse

from .. import maps as nm
from ..checks import run_check, run_day_rep
from ..cli import JSON_EXPORT_MAX_SPINE
from ..day import PresheafError
from ..maps import MapError, NecMap, classify, hom_set
from ..necklace import Necklace, NecklaceError, enumerate_necklaces, parse_necklace
from ..reedy import nec_truncation
from . import schemas as sc


def _necklace(data: sc.NecklaceIn | str) -> Necklace:
    if isinstance(data, str):
        return parse_necklace(data)
    return Necklace(tuple(data.joints))


def _map(data: sc.MapIn | str) -> NecMap:
    if isinstance(data, str):
        return nm.parse_map(data)
    return NecMap(_necklace(data.src), _necklace(data.tgt), tuple(data.images))


def _necklace_out(n: Necklace) -> sc.NecklaceOut:
    return sc.NecklaceOut(
        joints=list(n.joints), beads=list(n.beads), spine=n.spine, dim=n.dim, degree=tuple(n.degree)
    )


def _map_out(f: NecMap) -> sc.MapOut:
    return sc.MapOut(
        src=_necklace_out(f.src), tgt=_necklace_out(f.tgt), images=list(f.images), text=str(f)
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="neckcat",
        description="Necklace-category toolkit: enumeration, hom-sets, factorizations, "
        "Reedy and Day-convolution verification sweeps.",
        version="0.1.0",
    )

    @app.exception_handler(NecklaceError)
    @app.exception_handler(MapError)
    @app.exception_handler(PresheafError)
    async def _domain_error(_, exc):  # pragma: no cover - thin adapter
        raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health", response_model=sc.HealthResponse)
    def health() -> sc.HealthResponse:
        return sc.HealthResponse(status="ok")

    @app.post("/necklaces/enumerate", response_model=sc.EnumerateResponse)
    def enumerate_endpoint(request: sc.EnumerateRequest) -> sc.EnumerateResponse:
        necklaces = enumerate_necklaces(request.max_spine)
        return sc.EnumerateResponse(
            max_spine=request.max_spine,
            count=len(necklaces),
            necklaces=[_necklace_out(n) for n in necklaces],
        )

    @app.post("/hom", response_model=sc.HomResponse)
    def hom_endpoint(request: sc.HomRequest) -> sc.HomResponse:
        src = _necklace(request.src)
        tgt = _necklace(request.tgt)
        maps = hom_set(src, tgt)
        return sc.HomResponse(
            src=_necklace_out(src),
            tgt=_necklace_out(tgt),
            count=len(maps),
            maps=[_map_out(f) for f in maps],
        )

    @app.post("/classify", response_model=sc.ClassifyResponse)
    def classify_endpoint(request: sc.ClassifyRequest) -> sc.ClassifyResponse:
        f = _map(request.map)
        flags = classify(f)
        return sc.ClassifyResponse(
            map=_map_out(f),
            active=flags.active,
            inert=flags.inert,
            mono=flags.mono,
            epi=flags.epi,
            bead_reducing=flags.bead_reducing,
            spine_collapsing=flags.spine_collapsing,
        )

    @app.post("/factor", response_model=sc.FactorResponse)
    def factor_endpoint(request: sc.FactorRequest) -> sc.FactorResponse:
        f = _map(request.map)
        if request.mode == "epi-mono":
            epi, mono = nm.factor_epi_mono(f)
            parts = [("epi", epi), ("mono", mono)]
        elif request.mode == "active-inert":
            active, inert = nm.factor_active_inert(f)
            parts = [("active", active), ("inert", inert)]
        else:
            epi, mono = nm.factor_epi_mono(f)
            bead_reducing, spine_collapsing = nm.factor_bead_spine(epi)
            parts = [
                ("bead-reducing", bead_reducing),
                ("spine-collapsing", spine_collapsing),
                ("mono", mono),
            ]
        return sc.FactorResponse(
            map=_map_out(f),
            mode=request.mode,
            parts=[sc.FactorPart(role=role, **_map_out(part).model_dump()) for role, part in parts],
        )

    @app.post("/check", response_model=sc.CheckResponse)
    def check_endpoint(request: sc.CheckRequest) -> sc.CheckResponse:
        report = run_check(request.name, request.max_spine)
        return sc.CheckResponse(**report.to_json_dict())

    @app.post("/day/rep", response_model=sc.DayRepResponse)
    def day_rep_endpoint(request: sc.DayRepRequest) -> sc.DayRepResponse:
        x1 = _necklace(request.x1)
        x2 = _necklace(request.x2)
        report = run_day_rep(x1, x2, request.max_spine)
        return sc.DayRepResponse(**report.to_json_dict())

    @app.get("/export/nec-cat", response_class=PlainTextResponse)
    def export_endpoint(
        max_spine: int = Query(default=4, ge=0, le=sc.MAX_SERVICE_SPINE),
        format: str = Query(default="dot", pattern="^(dot|json)$"),
    ) -> str:
        reedy = nec_truncation(max_spine)
        if format == "dot":
            return reedy.cat.to_dot()
        if max_spine > JSON_EXPORT_MAX_SPINE:
            raise HTTPException(
                status_code=422,
                detail=f"JSON export is limited to max_spine <= {JSON_EXPORT_MAX_SPINE}; use dot",
            )
        import json

        return json.dumps(reedy.cat.to_json_dict(), indent=2, sort_keys=True)

    return app


app = create_app()
