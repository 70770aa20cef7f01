from __future__ import annotations

import pytest

from convref.errors import (
    ConfigInvalidError,
    DuplicateSessionError,
    EmptySegmentError,
    SessionNotFoundError,
)
from convref.hub import protocol
from convref.ingest import (
    ConversationCore,
    SessionConfig,
    iter_script_segments,
    load_script,
    replay_script,
)
from convref.nlp import ExtractionParams


class Recorder:
    def __init__(self):
        self.messages = []

    def __call__(self, session_id, message):
        self.messages.append((session_id, message))
        return 1

    def of_type(self, cls):
        return [m for _, m in self.messages if isinstance(m, cls)]


@pytest.fixture
def core(extractor):
    recorder = Recorder()
    core = ConversationCore(extractor=extractor, broadcast=recorder)
    core.recorder = recorder
    return core


def test_open_session_fresh_state(core):
    session = core.open_session(SessionConfig(session_id="s1"))
    assert session.next_seq == 0
    assert session.emitted_keywords == set()
    assert session.utterance_buffer == ""


def test_duplicate_session_rejected(core):
    core.open_session(SessionConfig(session_id="dup"))
    with pytest.raises(DuplicateSessionError):
        core.open_session(SessionConfig(session_id="dup"))


def test_unknown_session_rejected(core):
    with pytest.raises(SessionNotFoundError):
        core.push_segment("ghost", "hello there", True)
    with pytest.raises(SessionNotFoundError):
        core.get_session("ghost")


def test_empty_segment_rejected(core):
    core.open_session(SessionConfig(session_id="s1"))
    with pytest.raises(EmptySegmentError):
        core.push_segment("s1", "", True)
    with pytest.raises(EmptySegmentError):
        core.push_segment("s1", "   ", True)


def test_english_stopword_sentence_yields_no_keywords(core):
    core.open_session(SessionConfig(session_id="s1", language="en"))
    core.push_segment("s1", "the of and", True)
    assert core.recorder.of_type(protocol.KeywordsUpdate) == []


def test_seq_strictly_increasing_no_gaps(core):
    core.open_session(SessionConfig(session_id="s1"))
    seqs = [core.push_segment("s1", f"segment number {i} garden", True) for i in range(10)]
    assert seqs == list(range(10))


def test_push_segment_extracts_and_broadcasts(core):
    core.open_session(SessionConfig(session_id="s1"))
    seq = core.push_segment("s1", "I visited New York last May", True)
    assert seq == 0
    updates = core.recorder.of_type(protocol.KeywordsUpdate)
    assert len(updates) == 1
    got = {(k["phrase"], k["category"]) for k in updates[0].keywords}
    assert ("New York", "location") in got
    assert ("last May", "date") in got
    transcripts = core.recorder.of_type(protocol.TranscriptUpdate)
    assert transcripts[0].text == "I visited New York last May"


def test_growing_prefixes_broadcast_keyword_once(core):
    core.open_session(SessionConfig(session_id="s1"))
    core.push_segment("s1", "New York is big", False)
    core.push_segment("s1", "New York is really big", False)
    updates = core.recorder.of_type(protocol.KeywordsUpdate)
    phrases = [k["phrase"] for u in updates for k in u.keywords]
    assert phrases.count("New York") == 1


def test_monotone_emission_never_retracts(core):
    core.open_session(SessionConfig(session_id="s1"))
    text = "We talked about Google and Paris and museums all afternoon"
    words = text.split()
    seen: set[str] = set()
    for i in range(1, len(words) + 1):
        core.push_segment("s1", " ".join(words[:i]), i == len(words))
        session = core.get_session("s1")
        assert seen <= session.emitted_keywords
        seen = set(session.emitted_keywords)


def test_utterance_buffer_lifecycle(core):
    core.open_session(SessionConfig(session_id="s1"))
    core.push_segment("s1", "New York", False)
    assert core.get_session("s1").utterance_buffer == "New York"
    core.push_segment("s1", "New York is big", True)
    assert core.get_session("s1").utterance_buffer == ""


def test_last_segment_recorded(core):
    core.open_session(SessionConfig(session_id="s1"))
    core.push_segment("s1", "New York", False)
    segment = core.get_session("s1").last_segment
    assert segment is not None
    assert (segment.session_id, segment.seq, segment.text, segment.is_final) == \
        ("s1", 0, "New York", False)
    assert segment.received_at <= core.get_session("s1").traces.snapshot()[0].t_extract_done


def test_idle_timeout_expires_stalled_utterance(extractor):
    t = {"now": 0.0}
    core = ConversationCore(extractor=extractor, clock=lambda: t["now"])
    core.open_session(SessionConfig(session_id="s1", idle_timeout_s=5.0))
    core.push_segment("s1", "New York", False)
    assert core.get_session("s1").utterance_buffer == "New York"
    t["now"] += 6000.0
    core.push_segment("s1", "totally new topic garden", False)
    assert core.get_session("s1").utterance_buffer == "totally new topic garden"


def test_traces_recorded_per_segment(core):
    core.open_session(SessionConfig(session_id="s1"))
    for i in range(5):
        core.push_segment("s1", f"segment {i} about Paris museums", True)
    stats = core.measure_pipeline_latency("s1")
    assert stats["count"] == 5
    assert stats["p50_ms"] >= 0.0
    assert stats["p95_ms"] >= stats["p50_ms"]
    traces = core.get_session("s1").traces.snapshot()
    for trace in traces:
        assert trace.t_ingest <= trace.t_extract_done <= trace.t_broadcast_enqueued


def test_close_session(core):
    core.open_session(SessionConfig(session_id="s1"))
    core.close_session("s1")
    with pytest.raises(SessionNotFoundError):
        core.push_segment("s1", "hello garden", True)


def test_session_specific_params(core):
    core.open_session(SessionConfig(session_id="s1",
                                    params=ExtractionParams(damping=0.5)))
    assert core.get_session("s1").extractor is not None
    core.push_segment("s1", "I flew to Paris", True)
    updates = core.recorder.of_type(protocol.KeywordsUpdate)
    assert any(k["phrase"] == "Paris" for u in updates for k in u.keywords)


def test_unsupported_language_rejected(core):
    with pytest.raises(ConfigInvalidError):
        core.open_session(SessionConfig(session_id="s1", language="xx"))


# -- replay pacing --


def write_script(tmp_path, lines):
    path = tmp_path / "script.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_script_skips_comments(tmp_path):
    path = write_script(tmp_path, ["# header", "", "hello world", "  # more", "second line"])
    assert load_script(path) == ["hello world", "second line"]


def test_iter_segments_growing_prefix_then_final():
    segs = list(iter_script_segments(["alpha beta gamma delta"], 110, 360))
    assert segs[-1].is_final
    assert segs[-1].text == "alpha beta gamma delta"
    assert all(not s.is_final for s in segs[:-1])
    lengths = [len(s.text.split()) for s in segs]
    assert lengths == sorted(lengths)
    assert all(segs[i].at_s < segs[i + 1].at_s for i in range(len(segs) - 1))


def test_iter_segments_single_mode_one_final_per_utterance():
    utterances = ["one two three four five six seven eight nine ten eleven"] * 3
    segs = list(iter_script_segments(utterances, 110, 10))
    assert len(segs) == 3
    assert all(s.is_final for s in segs)


def test_zero_rates_rejected():
    with pytest.raises(ConfigInvalidError):
        list(iter_script_segments(["hello"], 0, 360))
    with pytest.raises(ConfigInvalidError):
        list(iter_script_segments(["hello"], 110, 0))


def test_replay_empty_file_clean_exit(core, tmp_path, sim_clock):
    path = write_script(tmp_path, ["# only a comment"])
    core.open_session(SessionConfig(session_id="s1"))
    stats = replay_script(core, "s1", path, 110, 360,
                          sleep=sim_clock.sleep, clock=sim_clock.clock)
    assert stats.segments == 0


def test_replay_continuous_mode_rate(core, tmp_path, sim_clock):
    lines = ["we walked around the lovely garden and talked about music today"] * 12
    path = write_script(tmp_path, lines)
    core.open_session(SessionConfig(session_id="s1"))
    stats = replay_script(core, "s1", path, 110, 360,
                          sleep=sim_clock.sleep, clock=sim_clock.clock)
    assert stats.segments >= 60
    assert stats.segments_per_min == pytest.approx(360, rel=0.10)
    assert stats.words_per_min == pytest.approx(110, rel=0.10)


def test_replay_single_mode_rate(core, tmp_path, sim_clock):
    lines = ["we walked around the lovely garden and talked about music today"] * 12
    path = write_script(tmp_path, lines)
    core.open_session(SessionConfig(session_id="s1"))
    stats = replay_script(core, "s1", path, 110, 10,
                          sleep=sim_clock.sleep, clock=sim_clock.clock)
    assert stats.segments == 12
    assert stats.finals == 12
    assert stats.segments_per_min == pytest.approx(10, rel=0.10)


def test_replay_max_segments(core, tmp_path, sim_clock):
    lines = ["a lovely garden walk with friends near the river path today"] * 20
    path = write_script(tmp_path, lines)
    core.open_session(SessionConfig(session_id="s1"))
    stats = replay_script(core, "s1", path, 110, 360,
                          sleep=sim_clock.sleep, clock=sim_clock.clock,
                          max_segments=50)
    assert stats.segments == 50
