from xduce.semantics.nft import (
    NftRun,
    NftStep,
    OutputSet,
    nft_accepting_run_count,
    nft_find_run,
    nft_membership,
    nft_outputs,
    nft_reaches,
)
from xduce.semantics.tdfa import TdfaStep, TdfaTrace, format_trace, tdfa_accepts, tdfa_outputs, tdfa_run
from xduce.semantics.tm import (
    Configuration,
    HeadCell,
    PlainCell,
    TmRun,
    TmStatus,
    initial_configuration,
    is_halting,
    tm_run,
    tm_step,
)

__all__ = [
    "Configuration",
    "HeadCell",
    "NftRun",
    "NftStep",
    "OutputSet",
    "PlainCell",
    "TdfaStep",
    "TdfaTrace",
    "TmRun",
    "TmStatus",
    "format_trace",
    "initial_configuration",
    "is_halting",
    "nft_accepting_run_count",
    "nft_find_run",
    "nft_membership",
    "nft_outputs",
    "nft_reaches",
    "tdfa_accepts",
    "tdfa_outputs",
    "tdfa_run",
    "tm_run",
    "tm_step",
]
