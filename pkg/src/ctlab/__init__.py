"""ctlab: contact-tracing epidemic laboratory.

Subpackages:
  bn      discrete Bayesian networks, exact inference, value of information
  covid   the COVID-19 diagnostic network, alerting, assessment API
  epi     cohort and agent epidemic simulators, tracing strategies, uptake math
  surv    surveillance report log, grid aggregation, heatmaps, outbreaks
  service FastAPI application exposing the surveillance + assessment API
"""

__version__ = "0.1.0"
