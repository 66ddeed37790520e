"""Key/value config files.

Format: one ``key = value`` pair per line, ``#`` comments, blank lines
ignored. Recognized keys:

    endpoint_url     completion endpoint, or "stub:PATH" for canned replies
    model_id         model name sent to the backend and stamped on records
    temperature      sampling temperature (default 1.0)
    sampling_enabled true/false (default true)
    max_tokens       completion length cap (default 512)
    stop_marker      stop sequence (default "\\nQuestion:", "\\n" unescaped)
    topics_path      topic list file, one topic per line (packaged default)
    parallelism      max in-flight completion requests (default 4)
    api_token        shared token required by the annotation service
    directions_dir   directory of direction text files for the service

The backend API key is never stored in the file; it comes from the
MWPLAB_API_KEY environment variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .backend import DEFAULT_STOP_MARKERS, SamplingConfig


@dataclass
class PipelineConfig:
    endpoint_url: str = ""
    model_id: str = ""
    temperature: float = 1.0
    sampling_enabled: bool = True
    max_tokens: int = 512
    stop_markers: list[str] = field(default_factory=lambda: list(DEFAULT_STOP_MARKERS))
    topics_path: str | None = None
    parallelism: int = 4
    api_token: str | None = None
    directions_dir: str | None = None

    def sampling(self) -> SamplingConfig:
        return SamplingConfig(temperature=self.temperature,
                              sampling_enabled=self.sampling_enabled,
                              max_tokens=self.max_tokens,
                              stop_markers=list(self.stop_markers))


def parse_config_text(text: str, source: str = "<config>") -> PipelineConfig:
    cfg = PipelineConfig()
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "endpoint_url":
            cfg.endpoint_url = value
        elif key == "model_id":
            cfg.model_id = value
        elif key == "temperature":
            cfg.temperature = float(value)
        elif key == "sampling_enabled":
            cfg.sampling_enabled = value.lower() in ("true", "1", "yes")
        elif key == "max_tokens":
            cfg.max_tokens = int(value)
        elif key == "stop_marker":
            cfg.stop_markers = [value.replace("\\n", "\n")]
        elif key == "topics_path":
            cfg.topics_path = value
        elif key == "parallelism":
            cfg.parallelism = int(value)
        elif key == "api_token":
            cfg.api_token = value
        elif key == "directions_dir":
            cfg.directions_dir = value
        else:
            raise ValueError(f"{source}:{line_no}: unknown key {key!r}")
    return cfg


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    return parse_config_text(path.read_text("utf-8"), source=str(path))
