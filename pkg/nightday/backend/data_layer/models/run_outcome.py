from typing import List, Optional

from pydantic import BaseModel, Field

from nightday.system.exceptions import NightdayError


class FailureRecord(BaseModel):
    file: str
    reason: str
    exit_code: int
    message: str

    @classmethod
    def from_error(cls, file: str, error: NightdayError) -> "FailureRecord":
        return cls(file=file, reason=error.reason, exit_code=error.exit_code, message=str(error))

    def as_line(self) -> str:
        message = self.message.replace('"', "'").replace("\n", " ")
        return f'error reason={self.reason} file={self.file} message="{message}"'


class RunOutcome(BaseModel):
    artifacts: List[str] = Field(default_factory=list)
    failures: List[FailureRecord] = Field(default_factory=list)
    summary_line: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return max((failure.exit_code for failure in self.failures), default=0)
