"""k-means++ seeding, Lloyd clustering and layout benchmarks."""
