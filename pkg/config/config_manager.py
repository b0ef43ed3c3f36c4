#!/usr/bin/env python3
"""
Configuration Manager for Convergence Studies

Loads and validates studies.yaml.
Provides helper functions for built-in integrands, default grids and
reference-integrator settings.
"""

import yaml
from pathlib import Path
from typing import Dict, List, Any, Optional
import logging

KERNEL_VARIANTS = ('sin', 'cos')


class UnknownStudyError(KeyError):
    """No study is configured for the requested function."""


class StudyConfig:
    """Manages convergence study configuration."""

    def __init__(self, config_path: Optional[Path] = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Path to studies.yaml file.
                        If None, uses default location.
        """
        if config_path is None:
            # Default to config/studies.yaml next to this script
            config_path = Path(__file__).parent / "studies.yaml"

        self.config_path = Path(config_path)
        self.config = self._load_config()
        self.logger = logging.getLogger(__name__)

    def _load_config(self) -> Dict[str, Any]:
        """Load and parse YAML configuration file."""
        if not self.config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")

        with open(self.config_path, 'r') as f:
            config = yaml.safe_load(f)

        return config or {}

    def list_functions(self) -> List[str]:
        """
        List built-in function names.

        Returns:
            List of function names (e.g., ['f1', 'f2'])
        """
        return list(self.config.get('functions', {}).keys())

    def get_function_study(self, name: str) -> Dict[str, Any]:
        """
        Get study settings for a built-in function.

        Args:
            name: Function name (e.g., 'f1')

        Returns:
            Dict with keys a, kernel, y_values, display_name

        Raises:
            UnknownStudyError: If the function is not configured
        """
        functions = self.config.get('functions', {})
        if name not in functions:
            raise UnknownStudyError(f"No study configured for function '{name}'")
        return functions[name]

    def get_defaults(self) -> Dict[str, Any]:
        """
        Get default study grid (ell, m_values, omegas, reference_m).

        Returns:
            Defaults dict
        """
        return self.config.get('defaults', {})

    def get_oracle_defaults(self) -> Dict[str, Any]:
        """
        Get reference integrator settings.

        Returns:
            Dict suitable for ReferenceConfig(**settings)
        """
        return self.config.get('oracle', {})

    def get_approximation_defaults(self) -> Dict[str, Any]:
        """Get settings for approximation-error studies."""
        return self.config.get('approximation', {})

    def get_float_format(self) -> str:
        """printf-style float format for CSV output."""
        return self.get_defaults().get('float_format', '%.16e')

    def get_study_summary(self) -> str:
        """
        Get human-readable summary of configuration.

        Returns:
            Multi-line string summary
        """
        defaults = self.get_defaults()

        summary = []
        summary.append("=" * 60)
        summary.append("Convergence Study Configuration Summary")
        summary.append("=" * 60)
        summary.append(f"ell: {defaults.get('ell', 'N/A')}")
        summary.append(f"m values: {defaults.get('m_values', [])}")
        summary.append(f"omegas: {defaults.get('omegas', [])}")
        summary.append(f"reference m: {defaults.get('reference_m', 'N/A')}")
        summary.append("")

        summary.append("Built-in functions:")
        summary.append("-" * 60)
        for name in self.list_functions():
            study = self.get_function_study(name)
            summary.append(
                f"  - {name:4s} | {study.get('display_name', 'N/A'):18s} | "
                f"a={study.get('a')} | {study.get('kernel')} | y={study.get('y_values')} | "
                f"smoothness={study.get('smoothness', 'N/A')}"
            )

        summary.append("")
        summary.append("=" * 60)

        return "\n".join(summary)

    def validate(self) -> List[str]:
        """
        Validate configuration for common issues.

        Returns:
            List of validation warnings/errors (empty if valid)
        """
        issues = []

        for key in ['defaults', 'functions']:
            if key not in self.config:
                issues.append(f"Missing required key: {key}")

        defaults = self.get_defaults()
        for key in ['ell', 'm_values', 'omegas', 'reference_m']:
            if key not in defaults:
                issues.append(f"Defaults missing required key: {key}")

        ell = defaults.get('ell')
        if ell is not None and (not isinstance(ell, int) or ell < 1):
            issues.append(f"Defaults 'ell' must be a positive integer, got {ell}")

        for m in defaults.get('m_values', []):
            if not isinstance(m, int) or m < 1:
                issues.append(f"Defaults 'm_values' contains invalid degree {m}")

        for omega in defaults.get('omegas', []):
            if not isinstance(omega, (int, float)) or omega < 0:
                issues.append(f"Defaults 'omegas' contains invalid frequency {omega}")

        functions = self.config.get('functions', {})
        if not functions:
            issues.append("No functions defined")

        for name, study in functions.items():
            for key in ['a', 'kernel', 'y_values']:
                if key not in study:
                    issues.append(f"Function '{name}' missing required key: {key}")

            a = study.get('a')
            if a is not None and (not isinstance(a, (int, float)) or a <= 0):
                issues.append(f"Function '{name}' has invalid half-width a={a}")

            kernel = study.get('kernel')
            if kernel is not None and kernel not in KERNEL_VARIANTS:
                issues.append(f"Function '{name}' references unknown kernel: {kernel}")

            if isinstance(a, (int, float)):
                for y in study.get('y_values', []):
                    if abs(y) > a:
                        issues.append(f"Function '{name}' evaluation point {y} outside [-{a}, {a}]")

        return issues


def main():
    """Command-line interface for configuration manager."""
    import argparse

    parser = argparse.ArgumentParser(description='Convergence Study Configuration Manager')
    parser.add_argument('--config', type=Path, help='Path to studies.yaml (default: config/studies.yaml)')
    parser.add_argument('--summary', action='store_true', help='Show configuration summary')
    parser.add_argument('--validate', action='store_true', help='Validate configuration')
    parser.add_argument('--list', action='store_true', help='List built-in functions')

    args = parser.parse_args()

    config = StudyConfig(args.config)

    if args.summary:
        print(config.get_study_summary())

    if args.validate:
        issues = config.validate()
        if issues:
            print("Validation Issues:")
            for issue in issues:
                print(f"  ⚠️  {issue}")
        else:
            print("✅ Configuration is valid!")

    if args.list:
        names = config.list_functions()
        print(f"\nBuilt-in Functions ({len(names)}):")
        for name in names:
            print(f"  - {name:4s} | {config.get_function_study(name).get('display_name', 'N/A')}")


if __name__ == '__main__':
    main()
