import json
import logging
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from litera.common.errors import ConfigurationError, PromptIntegrityError, UnknownPromptError
from litera.prompts.prompt_name import PromptName
from litera.prompts.prompt_template import PromptTemplate, text_checksum

logger = logging.getLogger(__name__)

ASSET_PACKAGE = "litera.prompts.assets"
MANIFEST_FILE = "manifest.json"
PROMPT_SUFFIX = ".txt"


class PromptRegistry:
    """
    An immutable registry of the system prompts, loaded from the packaged text assets. Each asset is
    checked against the checksum recorded in the manifest. Files named `<prompt name>.txt` in an
    override directory replace the packaged text and are exempt from the checksum check.
    """

    def __init__(self, override_dir: Optional[Path | str] = None):
        """
        Loads every prompt named in the manifest.

        :param override_dir: an optional directory of operator supplied prompt files
        :raises PromptIntegrityError: if a packaged prompt drifted from its recorded checksum
        :raises ConfigurationError: if the override directory does not exist
        """
        self.__manifest = self.__read_manifest()
        self.__templates: Dict[PromptName, PromptTemplate] = {}

        overrides = self.__find_overrides(override_dir)

        for name_value, entry in self.__manifest.items():
            name = PromptName.parse(name_value)
            if name in overrides:
                path = overrides[name]
                self.__templates[name] = PromptTemplate(
                    name, path.read_bytes().decode("utf-8"), entry["normative"], True, path
                )
                logger.info("Prompt '%s' overridden by %s", name.value, path)
                continue

            asset = resources.files(ASSET_PACKAGE).joinpath(entry["file"])
            self.__templates[name] = PromptTemplate(
                name, asset.read_bytes().decode("utf-8"), entry["normative"], False, None
            )

        self.verify()

    @staticmethod
    def __read_manifest() -> Dict[str, dict]:
        manifest = resources.files(ASSET_PACKAGE).joinpath(MANIFEST_FILE).read_text(encoding="utf-8")
        return json.loads(manifest)

    @staticmethod
    def __find_overrides(override_dir: Optional[Path | str]) -> Dict[PromptName, Path]:
        if override_dir is None:
            return {}

        override_dir = Path(override_dir)
        if not override_dir.is_dir():
            raise ConfigurationError(f"Prompt override directory {override_dir} does not exist")

        overrides = {}
        for name in PromptName.values():
            candidate = override_dir / f"{name.value}{PROMPT_SUFFIX}"
            if candidate.is_file():
                overrides[name] = candidate
        return overrides

    def verify(self) -> None:
        """
        Confirms every non-overridden prompt byte-equals the text its manifest checksum was taken from.

        :raises PromptIntegrityError: naming the first prompt that drifted
        """
        for name, template in self.__templates.items():
            if template.overridden:
                continue
            expected = self.__manifest[name.value]["sha256"]
            if template.checksum != expected:
                raise PromptIntegrityError(
                    f"Prompt '{name.value}' checksum {template.checksum} does not match manifest {expected}"
                )

    def get_prompt(self, name: PromptName | str) -> PromptTemplate:
        """
        Returns the registered prompt with the provided name.

        :param name: a PromptName or its string value
        :raises UnknownPromptError: if no prompt is registered under that name
        """
        try:
            key = PromptName(name.value if isinstance(name, PromptName) else name)
        except ValueError:
            raise UnknownPromptError(f"Unknown prompt '{name}'") from None

        if key not in self.__templates:
            raise UnknownPromptError(f"Prompt '{key.value}' is not registered")
        return self.__templates[key]

    def text(self, name: PromptName | str) -> str:
        return self.get_prompt(name).text

    def names(self) -> List[PromptName]:
        return list(self.__templates)

    def overridden(self) -> List[PromptName]:
        return [name for name, template in self.__templates.items() if template.overridden]

    def checksums(self) -> Dict[str, str]:
        return {name.value: text_checksum(template.text) for name, template in self.__templates.items()}


@lru_cache(maxsize=1)
def default_registry() -> PromptRegistry:
    """
    Returns the shared registry of packaged prompts.
    """
    return PromptRegistry()


def get_prompt(name: PromptName | str, registry: Optional[PromptRegistry] = None) -> PromptTemplate:
    """
    Returns a registered prompt from the provided registry, or from the packaged prompts.
    """
    return (registry or default_registry()).get_prompt(name)
