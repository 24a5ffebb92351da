"""Grid-convergence checks for directivity and S11 minimum on the reference layout."""
from patcharray.geometry import paper_geometry
from patcharray.network import build_series_fed_array, match_array, s11_sweep
from patcharray.radiation import ExcitationSet, directivity_dbi, total_pattern

g = paper_geometry()
ex = ExcitationSet.uniform(g.element_count, g.spacing)

print("dtheta  dphi   D (dBi)")
for dt, dp in [(1.0, 1.0), (0.5, 1.0), (0.25, 0.5), (0.125, 0.25)]:
    d = directivity_dbi(total_pattern(g, None, ex, g.design_frequency, dtheta_deg=dt, dphi_deg=dp))
    print(f"{dt:<7} {dp:<6} {d:.5f}")

model = match_array(build_series_fed_array(g), g.design_frequency, g.substrate())
print("\npoints  f_min (GHz)  min S11 (dB)  BW-10 (GHz)")
for n in (251, 501, 1001, 2001, 4001):
    s = s11_sweep(model, 10e9, 26e9, n)
    bw = s.bandwidth_10db
    print(f"{n:<7} {s.f_at_min / 1e9:<12.4f} {s.min_s11_db:<13.3f} {bw / 1e9 if bw else float('nan'):.4f}")
