from .catalog import CalculusCatalogEntry, CheckSpec, catalog, get_entry
from .demos import DEMOS, Transcript, run_demo
from .suites import expectations_met, oracle_suite, shape_suite, swap_suite, termination_suite
