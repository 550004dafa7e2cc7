"""
Workflow layer for pimtc.
High-level runs that orchestrate the graph, kernel, slicing and simulation services.
"""

from pimtc.workflows.analysis import AnalysisWorkflow

# Create workflow instances
analysis_workflow = AnalysisWorkflow()

__all__ = [
    "analysis_workflow",
    "AnalysisWorkflow",
]
