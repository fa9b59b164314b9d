from typing import Dict, List, Mapping

from SkillComposer.Store.MetricsLog import format_success, wilson_interval


def _tag_lines(tags: Mapping[str, int]) -> List[str]:
    if not tags:
        return []
    return ["Failure tags:"] + [f"  {tag}: {count}" for tag, count in sorted(tags.items())]


def activity_report(title: str, summary: Mapping) -> str:
    """Per-kitchen x/n rows followed by the total, like "Total: 16/30 (53.3%)"."""
    lines = [title]
    if summary["trials"] == 0:
        lines.append("No trials.")
        return "\n".join(lines)
    for layout, (successes, trials) in summary["per_layout"].items():
        lines.append(f"  Kitchen {layout}: {successes}/{trials}")
    lines.append(f"  Total: {format_success(summary['successes'], summary['trials'])}")
    lines += _tag_lines(summary["failure_tags"])
    return "\n".join(lines)


def skill_report(skill: str, policy: str, summary: Mapping) -> str:
    lines = [f"Skill {skill} ({policy})"]
    if summary["trials"] == 0:
        lines.append("No trials.")
        return "\n".join(lines)
    low, high = wilson_interval(summary["successes"], summary["trials"])
    lines.append(f"  Success: {format_success(summary['successes'], summary['trials'])} "
                 f"[95% CI {100 * low:.1f}%-{100 * high:.1f}%]")
    for layout, (successes, trials) in summary["per_layout"].items():
        lines.append(f"  Kitchen {layout}: {successes}/{trials}")
    lines += _tag_lines(summary["failure_tags"])
    return "\n".join(lines)


def ablation_report(rates: Dict[str, Mapping]) -> str:
    """Success of each condition and its signed difference to the unablated run, in percentage points."""
    base = rates["baseline"]["rate"]
    lines = ["Ablation (held-out activity success)"]
    for condition, summary in rates.items():
        text = format_success(summary["successes"], summary["trials"])
        if condition == "baseline":
            lines.append(f"  {condition}: {text}")
        else:
            lines.append(f"  {condition}: {text}  delta {100.0 * (summary['rate'] - base):+.1f} pp")
    return "\n".join(lines)
