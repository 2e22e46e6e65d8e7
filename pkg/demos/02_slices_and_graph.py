"""
Constellations and slices
=========================

A slice is everything that feeds one usage. Each DT instance implements one
slice, so slices show what a single instance has to carry.
"""

from pathlib import Path
import tempfile

from twindesc import enumerate_slices, extract_slice, load_corpus, to_dot

clamp = load_corpus("smart_clamp.dtd")
c = clamp.constellation
print(f"{len(c.usages)} usages, {len(c.enablers)} enablers, "
      f"{len(c.models_and_data)} models and data, {len(c.edges)} flows")

for s in enumerate_slices(c):
    support = [n for n in s.nodes if n != s.usage]
    print(f"- {s.usage}: {', '.join(support)}")

# The history store is shared: it shows up in four slices.
shared = [s.usage for s in enumerate_slices(c) if "History Store" in s.nodes]
print("History Store supports:", ", ".join(shared))

# Highlight one slice in the DOT output; render it with `dot -Tsvg`.
wear = extract_slice(c, "Estimate Tool Wear")
out = Path(tempfile.gettempdir()) / "smart_clamp_tool_wear.dot"
out.write_text(to_dot(c, highlight=wear, name=clamp.name), encoding="utf-8")
print(f"wrote {out} ({len(wear.nodes)} highlighted nodes, {len(wear.edges)} edges)")
