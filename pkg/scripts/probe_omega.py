"""Window probes on Omega(lambda, b) for a few twists, with independently re-checked certificates."""

import sys

from virtwist.config import ProbeConfig
from virtwist.modules import Natural, Omega
from virtwist.scalar import S
from virtwist.structure import submodule_probe, theorem9_predict, verify_probe_certificate

cfg = ProbeConfig(window=int(sys.argv[1]) if len(sys.argv) > 1 else 7)
cases = [(Omega(2, b), ("E", k)) for b in (S(0), S(1), S(1) / 2, S(3)) for k in (0, 1)]
cases.append((Natural(0), ("T", 0)))
print(f"{'module':34s} {'seed':7s} {'verdict':26s} dim/window  words  escapes  cert  predicted")
for M, sym in cases:
    rep = submodule_probe(M, M.basis_vec(sym), cfg.N, cfg.L, cfg.window, workers=cfg.workers, saturate=cfg.saturate)
    cert = verify_probe_certificate(M, rep) if rep.verdict == "PROPER_SUBSPACE_WITNESS" else "-"
    print(f"{M.describe():34s} {str(sym):7s} {rep.verdict:26s} {rep.spanned_dim:3d}/{rep.window_dim:<6d} "
          f"{rep.word_span_dim:5d}  {rep.escapes:7d}  {str(cert):5s} {theorem9_predict(M).verdict}")
