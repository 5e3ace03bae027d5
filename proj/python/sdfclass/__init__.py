"""Signed-distance-function classification toolkit."""

from ._core import (  # noqa: F401
    BenchmarkReport,
    CornerReport,
    Dataset,
    KernelKind,
    KernelParams,
    KnnModel,
    LinearSeparator,
    SdfModel,
    TargetKind,
    TrialStats,
    biased_toy,
    decision_values,
    decision_zero_on_axis,
    estimate_b,
    exact_sdf_quadrant,
    gaussian_kernel,
    gen_checkerboard,
    gen_uniform_square,
    indicator,
    knn_predict,
    linear_gram,
    load_csv,
    load_model,
    make_knn,
    pearson_weights,
    predict,
    rmsd_sigma,
    run_benchmark,
    run_biased_experiment,
    run_corner_experiment,
    save_csv,
    save_model,
    separator_offset,
    solve_regularized,
    split_2to1,
    summarize,
    to_csv,
    train_if_regression,
    train_ksvm,
    train_lsvm_linear,
    train_psvm_linear,
    train_sdf,
    train_sdf_linear,
    weighted_distance_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
