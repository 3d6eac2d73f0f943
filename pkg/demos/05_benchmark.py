"""Throughput and scaling diagnostics.

Run: python demos/05_benchmark.py   (~30 s; writes bench.csv + bench.gp)
"""
from gridrts import bench

print("configuration extremes:")
mins = bench.run_update_benchmark([10], [1], bench.minimal_config(), duration=0.5)
maxs = bench.run_update_benchmark([31], [20], bench.maximal_config(), duration=0.5)
print(f"  minimal (10x10, 2 units, no pathfinding, instant): {mins[0].ups:>12,.0f} ups")
print(f"  maximal (31x31, 40 units, durative, pathfinding) : {maxs[0].ups:>12,.0f} ups")
print(f"  ratio: {mins[0].ups / maxs[0].ups:,.0f}x\n")

print("map-size sweep (pathfinding on):")
table = bench.run_update_benchmark([10, 15, 21, 31], [1], bench.maximal_config(),
                                   duration=0.6)
for s in table:
    print(f"  {s.map_size:>2}x{s.map_size:<2} {s.ups:>10,.0f} ups "
          f"({s.cost_per_tick * 1e6:6.1f} us/tick)")

units = bench.run_update_benchmark([31], [2, 5, 10, 20, 40], bench.maximal_config(),
                                   duration=0.5)
fits = bench.fit_scaling(table + units)
print(f"\nupdate cost vs tile count: linear fit R^2 = {fits['map_slope_r2']:.3f}")
print(f"unit-count growth: {fits['unit_curve_class']} "
      f"(log-log slope {fits['unit_loglog_slope']:.2f})")

print(f"\nraster throughput (grayscale 10x10): "
      f"{bench.raster_throughput(10, duration=0.3):,.0f} frames/s")

bench.write_csv(table + units, "bench.csv")
bench.write_plot_script("bench.csv", "bench.gp")
print("wrote bench.csv and bench.gp (gnuplot bench.gp)")
