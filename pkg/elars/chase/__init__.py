from elars.chase.engine import ChaseState, FuelExhausted, Saturated, active_matches, chase
from elars.chase.index import FactIndex
from elars.chase.matcher import answer_bcq_on_facts, delta_homomorphisms, homomorphisms
