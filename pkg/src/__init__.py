"""Package init for src."""


