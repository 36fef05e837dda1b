# Road network with four intersections (I1 northwest, I2 northeast, I3
# southeast, I4 southwest), five parking lots P1..P5, and one branch point
# B1..B5 per lot where its road meets the parking entrance: 26 states.
#
# Each intersection is modeled as four corner states (n/e/s/w) circulating
# clockwise, so driving through it costs internal steps and the approach
# direction is part of the state. One-way lanes connect facing corners:
#
#   north street:  I1e -> B1 -> I2w   (P1 off B1)     I2w -> B5 -> I1e   (P5 off B5)
#   east  street:  I2s -> B2 -> I3n   (P2 off B2)     I3n -> I2s
#   south street:  I3w -> B3 -> I4e   (P3 off B3)     I4e -> I3w
#   west  street:  I4n -> B4 -> I1s   (P4 off B4)     I1s -> I4n
#
# The topology is a reconstruction; edge weights are synthetic placeholders
# in abstract travel-time units, not measured distances.

props P1 P2 P3 P4 P5

state I1n
state I1e
state I1s
state I1w
state I2n
state I2e
state I2s
state I2w
state I3n
state I3e
state I3s
state I3w
state I4n
state I4e
state I4s
state I4w
state B1
state B2
state B3
state B4
state B5
state P1 P1
state P2 P2
state P3 P3
state P4 P4
state P5 P5

init I1n

# intersection roundabouts, clockwise
trans I1n I1e 1.0
trans I1e I1s 1.0
trans I1s I1w 1.0
trans I1w I1n 1.0
trans I2n I2e 1.0
trans I2e I2s 1.0
trans I2s I2w 1.0
trans I2w I2n 1.0
trans I3n I3e 1.0
trans I3e I3s 1.0
trans I3s I3w 1.0
trans I3w I3n 1.0
trans I4n I4e 1.0
trans I4e I4s 1.0
trans I4s I4w 1.0
trans I4w I4n 1.0

# north street, eastbound with P1 and westbound with P5
trans I1e B1 4.0
trans B1 I2w 4.0
trans B1 P1 1.0
trans P1 B1 1.0
trans I2w B5 4.0
trans B5 I1e 4.0
trans B5 P5 1.0
trans P5 B5 1.0

# east street, southbound with P2
trans I2s B2 3.0
trans B2 I3n 3.0
trans B2 P2 1.0
trans P2 B2 1.0
trans I3n I2s 6.0

# south street, westbound with P3
trans I3w B3 4.0
trans B3 I4e 4.0
trans B3 P3 1.0
trans P3 B3 1.0
trans I4e I3w 8.0

# west street, northbound with P4
trans I4n B4 3.0
trans B4 I1s 3.0
trans B4 P4 1.0
trans P4 B4 1.0
trans I1s I4n 6.0
