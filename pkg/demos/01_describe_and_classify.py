"""
Describing a twin and placing it on the ladder
==============================================

Parse the bundled smart-clamp description, look at what it reports, and see
why it lands on "Digital Shadow" rather than "Digital Twin".
"""

from twindesc import classify, completeness, load_corpus, parse_text, validate
from twindesc.model import presence_of_automatic_actions, presence_of_automatic_data

clamp = load_corpus("smart_clamp.dtd")
reported, score = completeness(clamp)
print(f"{clamp.name}: {score}/14 characteristics reported")

# data flows in automatically, but every action goes through the operator
print("automatic data:   ", presence_of_automatic_data(clamp).value)
print("automatic actions:", presence_of_automatic_actions(clamp).value)
print("verdict:          ", classify(clamp).label)

# a clean description yields no diagnostics at all
print("diagnostics:", validate(clamp))

# Leave the actions out and the verdict can no longer be pinned down.
vague = parse_text('''
digital_twin "Workcell" {
  data { automatic "Joint States" @ real_time }
}
''').description
verdict = classify(vague)
print()
print(f"{vague.name}: {verdict.verdict.value}, one of {verdict.label}")

# Each missing characteristic shows up as a W203 warning.
for d in validate(vague)[:3]:
    print(" ", d.format("workcell.dtd"))
print("  ...")

# Saying "automatic none" on both sides settles it.
settled = parse_text('''
digital_twin "Offline Model" {
  data { automatic none  manual "Quarterly export" }
  actions { automatic none }
}
''').description
print(f"{settled.name}: {classify(settled).label}")
