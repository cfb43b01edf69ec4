"""Canonical node feature schema shared by the corpus and dataset layers.

Every system-level operation carries a fixed-width binary attribute vector.
The first seventeen positions are static properties declared in the corpus;
the final two (``head``, ``tail``) are positional and are always derived from
an operation's placement in a concrete attack graph, never stored.
"""
from __future__ import annotations

FEATURE_NAMES: tuple[str, ...] = (
    "application_layer",
    "controller",
    "app_controller_interface",
    "vnf",
    "network_infrastructure",
    "management_layer",
    "hypervisor",
    "flooding",
    "access_control",
    "data_plane",
    "sca",
    "control_channel",
    "sensitive_information",
    "sdn_cp",
    "sdn_dp",
    "nfv",
    "malicious_peripheral",
    "head",
    "tail",
)

FEATURE_COUNT = len(FEATURE_NAMES)
BRANCH_FEATURE_COUNT = 2 * FEATURE_COUNT

FEATURE_INDEX: dict[str, int] = {name: i for i, name in enumerate(FEATURE_NAMES)}

HEAD_INDEX = FEATURE_INDEX["head"]
TAIL_INDEX = FEATURE_INDEX["tail"]

# Static positions a corpus file may set (everything except head/tail).
STATIC_FEATURE_NAMES: tuple[str, ...] = FEATURE_NAMES[:HEAD_INDEX]

DOMAIN_TAGS: tuple[str, ...] = ("SDN-CP", "SDN-DP", "NFV", "MAL-PERIPH")

# Feature position asserting membership in each graph domain.
DOMAIN_FEATURE_INDEX: dict[str, int] = {
    "SDN-CP": FEATURE_INDEX["sdn_cp"],
    "SDN-DP": FEATURE_INDEX["sdn_dp"],
    "NFV": FEATURE_INDEX["nfv"],
    "MAL-PERIPH": FEATURE_INDEX["malicious_peripheral"],
}

# Dataset groups: the four intra-domain groups plus cross-domain branches.
INTER_GROUP = "inter-graph"
GROUP_ORDER: tuple[str, ...] = DOMAIN_TAGS + (INTER_GROUP,)
