"""
From a description to an AAS skeleton
=====================================

Map the smart clamp onto Asset Administration Shell submodels and see which
characteristics survive the trip.
"""

from twindesc import SupportLevel, load_corpus, map_to_aas, serialize_aas

doc = map_to_aas(load_corpus("smart_clamp.dtd"))
print(doc.header.shell_id)
for sm in doc.submodels:
    parts = [f"{len(sm.properties)} props", f"{len(sm.operations)} ops",
             f"{len(sm.events)} events"]
    refs = f" -> {', '.join(sm.references)}" if sm.references else ""
    print(f"  {sm.source_characteristic.code:>3} {sm.id_short} ({', '.join(parts)}){refs}")

print(f"{len(doc.views)} views, one per slice")

# The support buckets are fixed; the mapping report says what was dropped.
for level in SupportLevel:
    print(f"{level.value:>13}: {' '.join(c.code for c in doc.bucket(level))}")
for entry in doc.mapping_report:
    if entry.level is SupportLevel.NOT_SUPPORTED:
        print(f"  {entry.characteristic.code}: {entry.annotation}")

text = serialize_aas(doc)
print(f"canonical JSON: {len(text.splitlines())} lines, stable across runs: "
      f"{text == serialize_aas(map_to_aas(load_corpus('smart_clamp.dtd')))}")
