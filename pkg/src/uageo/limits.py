from pydantic import BaseModel, ConfigDict, PositiveInt

from uageo.errors import SizeLimitExceeded


class Limits(BaseModel):
    """Caps on every enumeration the workbench performs."""

    model_config = ConfigDict(frozen=True)

    max_terms: PositiveInt = 100_000
    max_points: PositiveInt = 1_000_000
    max_diagonal: PositiveInt = 1_000_000
    max_hom_maps: PositiveInt = 1_000_000
    max_table_entries: PositiveInt = 1_000_000
    max_subalgebra: PositiveInt = 1_000_000
    max_exhaustive_subsets: PositiveInt = 1 << 16
    max_pairs: PositiveInt = 1_000_000
    max_systems: PositiveInt = 100_000
    max_group_order: PositiveInt = 1024

    def check(self, cap: str, required: int):
        """Raises SizeLimitExceeded if `required` is over the named cap."""
        allowed = getattr(self, cap)
        if required > allowed:
            raise SizeLimitExceeded(cap, required, allowed)


DEFAULT_LIMITS = Limits()
