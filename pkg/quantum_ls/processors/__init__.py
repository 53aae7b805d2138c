from quantum_ls.processors.capacity import CapacityBound, capacity_bound
from quantum_ls.processors.report import VerificationReport, combine_reports
from quantum_ls.processors.suites import SUITES, InstanceContext, Suite, get_suite
from quantum_ls.processors.verification_runner import VerificationRunner, list_suites

__all__ = [
    "CapacityBound",
    "capacity_bound",
    "VerificationReport",
    "combine_reports",
    "SUITES",
    "InstanceContext",
    "Suite",
    "get_suite",
    "VerificationRunner",
    "list_suites",
]
