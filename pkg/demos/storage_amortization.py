"""Why grouping helps: the proof-amortization arithmetic.

Storing one 48-byte proof next to every 32-byte entry means 80 bytes per
entry. Grouping g entries behind a single aggregated proof drops that to
32 + 48/g. This script walks the reference numbers for a 64-entry grid.
"""

from pmpdas import storage_report

print("per-entry proofs vs one proof per group, 64 entries\n")
print(f"{'g':>3} {'objects':>8} {'object bytes':>13} "
      f"{'total':>7} {'amortized/entry':>16}")
for g in (1, 2, 4, 8, 16, 64):
    r = storage_report(64, g)
    print(f"{g:>3} {r.grouped_object_count:>8} {r.grouped_object_bytes:>13} "
          f"{r.grouped_total_bytes:>7} {str(r.amortized_display()):>16}")

r = storage_report(64, 4)
print(f"\nat g = 4 the {r.baseline_total_bytes} baseline bytes shrink to "
      f"{r.grouped_total_bytes} ({r.grouped_object_count} objects of "
      f"{r.grouped_object_bytes} bytes, {r.amortized_display()} bytes per "
      f"entry amortized)")
print(f"full on-wire total including object framing: "
      f"{r.grouped_wire_total_bytes} bytes")
