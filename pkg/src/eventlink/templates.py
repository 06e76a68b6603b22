"""Answer template strings, versioned so golden tests stay stable.

Bump TEMPLATE_VERSION whenever any wording here changes.
"""

TEMPLATE_VERSION = "1"

NO_SHARED_EVENTS = "No event was found with temporal overlap between the queried persons."

SINGLE_PERSON = "{person} is linked to {count} in the loaded data."

SHARED_BY_INTENT = {
    "professional": "{persons} worked together at {count}: {events}.",
    "personal": "{persons} share personal milestones including {count}: {events}.",
    "general": "{persons} are connected through {count}: {events}.",
}

RELATION_LINE = "{predicate}: {subject} and {object}{validity}."

VALIDITY_BOTH = ", from {start} to {end}"
VALIDITY_FROM = ", since {start}"
VALIDITY_TO = ", until {end}"

HEDGE = (
    "Being linked to the same event does not prove that these people were "
    "actually in the same place at the same time."
)
