//! Alpha-stable modelling of heavy-tailed return data.
//!
//! The crate covers density and distribution evaluation, exact sampling,
//! three stable-parameter estimators (maximum likelihood, McCulloch
//! quantiles, empirical characteristic function regression), a
//! location-scale Student-t fit and Kolmogorov-Smirnov comparisons against
//! Cauchy, Student-t and Lévy alternatives.

pub mod data_io;
pub mod density;
pub mod error;
pub mod estimation;
pub mod format;
pub mod gof;
pub mod optimize;
pub mod quad;
pub mod sampling;
pub mod stable_core;

pub use data_io::{load_price_csv, log_returns, summary_stats, CsvSchema, PriceSeries, ReturnSeries, SummaryStats};
pub use density::{cdf, pdf, quantile, std_normal_cdf, EvalOptions};
pub use error::{Result, StableError};
pub use estimation::{fit_ecf, fit_mle, fit_quantile, fit_student_t, FitResult, McCullochTables, Method, TFitResult};
pub use gof::{compare_distributions, jarque_bera, ks_critical_values, ks_p_value, ks_statistic, GofReport};
pub use sampling::{sample, SeededRng};
pub use stable_core::{ComplexValue, Parameterization, StableParams};
