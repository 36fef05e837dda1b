# Four-state data-gathering example: one gather site, two upload sites, one
# of them with a recharge station. Supports runs like q0 q2 q1 q0 q2 q3 q0.
# Weights are synthetic placeholders (unit travel time per hop).

props gather upload recharge

state q0
state q1 upload
state q2 gather
state q3 upload recharge

init q0

trans q0 q2 1.0
trans q2 q1 1.0
trans q2 q3 1.0
trans q1 q0 1.0
trans q3 q0 1.0
