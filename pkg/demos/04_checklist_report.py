"""
Checklist reports
=================

The report lists all fourteen characteristics and flags the ones a
description leaves out. Compare the complete smart clamp with a trimmed copy.
"""

from twindesc import ReportOptions, load_corpus, render_report

partial = load_corpus("smart_clamp_partial.dtd")
text = render_report(partial, ReportOptions(include_mapping_summary=True))

# print the header and the two sections the trimmed copy is missing
lines = text.splitlines()
print("\n".join(lines[:7]))
for heading in ("## C11", "## C12"):
    i = next(k for k, ln in enumerate(lines) if ln.startswith(heading))
    print()
    print("\n".join(lines[i:i + 3]))

# The human-robot report never says whether actions are automatic.
robot = render_report(load_corpus("human_robot.dtd"))
print()
print(robot.splitlines()[2])
