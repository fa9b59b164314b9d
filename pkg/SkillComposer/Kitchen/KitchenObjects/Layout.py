from typing import Dict, NamedTuple, Tuple


class Layout(NamedTuple):
    layout_id: int
    width: float
    slots: Tuple[float, ...]  # container x-centres on the back wall, filled cupboards first


LAYOUTS: Dict[int, Layout] = {layout.layout_id: layout for layout in (
    Layout(0, 3.0, (0.7, 1.5, 2.3)),
    Layout(1, 3.4, (2.6, 0.8, 1.7)),
    Layout(2, 2.6, (0.5, 1.3, 2.1)),
    Layout(3, 3.2, (1.9, 1.1, 2.7)),
    Layout(4, 2.8, (1.4, 0.6, 2.2)),
    Layout(5, 3.6, (0.9, 2.7, 1.8)),
    # held-out kitchens
    Layout(6, 3.0, (2.2, 1.2, 0.5)),
    Layout(7, 3.8, (1.6, 3.1, 0.7)),
    Layout(8, 2.7, (1.9, 0.5, 1.2)),
)}

TRAIN_LAYOUTS = (0, 1, 2, 3, 4, 5)
HELD_OUT_LAYOUTS = (6, 7, 8)
