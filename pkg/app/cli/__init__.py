"""Command-line entry point for seeding, clustering, benchmarks and audits."""
