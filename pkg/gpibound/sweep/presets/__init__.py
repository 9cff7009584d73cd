from gpibound.sweep.presets.same_sign import SameSignSweep
from gpibound.sweep.presets.opposite_sign import OppositeSignSweep
from gpibound.sweep.presets.oracle import OracleSweep
from gpibound.sweep.presets.full import FullSweep

PRESETS = {
    "same-sign": SameSignSweep,
    "opposite-sign": OppositeSignSweep,
    "oracle": OracleSweep,
    "full": FullSweep,
}
