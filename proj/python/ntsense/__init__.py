"""Soft sensor for sulphonation product quality (NT) prediction.

Thin Python surface over the C++ core: synthetic data generation, dataset
handling, the four regressors, evaluation metrics, permutation importance and
partial dependence.
"""

from ntsense._core import (  # noqa: F401
    Dataset,
    EvaluationReport,
    FeatureImportance,
    ForestParams,
    GeneratorConfig,
    GeneratorManifest,
    ModelBundle,
    ModelKind,
    NetworkParams,
    NtsenseError,
    OutlierSetting,
    PartialDependenceCurve,
    RegressionModel,
    RegressorSpec,
    Standardizer,
    apply_standardizer,
    collect_predictions,
    derive_seed,
    describe,
    evaluate,
    feature_names,
    filter_outliers,
    fit_standardizer,
    flag_outliers_zscore,
    generate,
    invert_standardizer,
    load_csv,
    load_model,
    mae,
    partial_dependence,
    pearson,
    permutation_importance,
    rmse,
    save_model,
    smooth_curve,
    split,
    train,
)

__all__ = [name for name in dir() if not name.startswith("_")]
