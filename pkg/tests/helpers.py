"""Small construction helpers shared across the pipeline tests."""

from datetime import datetime, timezone

from sinosent.corpus import CountryCode, RawPost
from sinosent.normalizer import NormalizedPost


def make_post(post_id="p1", text="hello", when="2020-05-01T10:00:00", country="AU"):
    return RawPost(
        id=post_id,
        text=text,
        timestamp=datetime.fromisoformat(when).replace(tzinfo=timezone.utc),
        country=CountryCode(country),
    )


def make_normalized(text, post_id="p1"):
    return NormalizedPost(post_id=post_id, text=text, tokens=tuple(text.split()))
