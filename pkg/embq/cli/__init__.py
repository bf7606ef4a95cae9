from embq.cli.main import RunConfig, build_parser, dispatch, main, validate_inputs

__all__ = ["RunConfig", "build_parser", "dispatch", "main", "validate_inputs"]
