from typing import Optional

from pydantic import BaseSettings, validator


class CliConfig(BaseSettings):
    defeaters_file: Optional[str] = None
    max_nodes: int = 20000
    max_depth: int = 64
    max_context_split: int = 4096
    max_defeater_subsets: int = 256
    output_format: str = 'text'
    color: bool = False
    strict_axioms: bool = False
    truth_table_max_atoms: int = 16
    log_level: str = 'WARNING'

    @validator('max_nodes', 'max_depth', 'max_context_split', 'max_defeater_subsets', 'truth_table_max_atoms')
    def bound_is_positive(cls, value):
        if value <= 0:
            raise ValueError('must be positive')
        return value

    @validator('output_format')
    def format_is_known(cls, value):
        if value not in ('text', 'json'):
            raise ValueError("must be 'text' or 'json'")
        return value

    def bounds(self):
        """
        The bounds function packs the search limits of this configuration into
        the value the prover consumes.

        :param self: Access the configured limits
        :return: A SearchBounds instance
        :doc-author: Trelent
        """
        from src.services.prover import SearchBounds

        return SearchBounds(
            max_nodes=self.max_nodes,
            max_context_split=self.max_context_split,
            max_defeater_subsets=self.max_defeater_subsets,
            max_depth=self.max_depth,
        )

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = CliConfig()
