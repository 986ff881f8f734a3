"""
Seeded verification campaigns over the registered rules.
"""

from .campaign import CampaignResult, TrialRecord, run_campaign, run_trial

__all__ = ["CampaignResult", "TrialRecord", "run_campaign", "run_trial"]
