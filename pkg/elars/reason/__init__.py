from elars.reason.belts import BELT_PROGRAM, BeltConfig, gen_belts, write_belts
from elars.reason.oracle import oracle_answer
from elars.reason.pipeline import (
    Answer, AnswerOptions, ChasePlan, Gate, Materializer, Verdict, answer, chase_fuel, decide_gate,
    materialize, plan_chase, project_model,
)
from elars.reason.pointwise import TickReport, run_pointwise, stream_batches
