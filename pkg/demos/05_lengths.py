"""Which encoding is shorter on average?"""

from formula_forge import Metric, size
from formula_forge.fcfgen import fcf_generate
from formula_forge.zeta import run_improved

N = 2**14
fcf = fcf_generate(N)
scf = run_improved(13).naturals.exprs[:N]
for metric in Metric:
    f = sum(size(e, metric) for e in fcf) / N
    s = sum(size(e, metric) for e in scf) / N
    print(f"{metric.value:7s} fcf mean {f:7.2f}   scf mean {s:7.2f}")

# the same table as CSV: formula-forge stats --max 65536 --metric gates --out gates.csv
