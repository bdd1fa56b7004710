// Copyright 2026 The svcgraph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Mirrors data/words.txt.
#pragma once

#include <array>
#include <string_view>

namespace svc {

inline constexpr std::array<std::string_view, 516> kDefaultWords = {
    "able", "acid", "aged", "also", "area", "army", "away", "baby", "back",
    "ball", "band", "bank", "base", "bath", "bear", "beat", "been", "beer",
    "bell", "belt", "best", "bill", "bird", "blow", "blue", "boat", "body",
    "bomb", "bond", "bone", "book", "boom", "born", "boss", "both", "bowl",
    "bulk", "burn", "bush", "busy", "call", "calm", "came", "camp", "card",
    "care", "case", "cash", "cast", "cell", "chat", "chip", "city", "club",
    "coal", "coat", "code", "cold", "come", "cook", "cool", "cope", "copy",
    "core", "cost", "crew", "crop", "dark", "data", "date", "dawn", "days",
    "dead", "deal", "dear", "debt", "deep", "deny", "desk", "dial", "diet",
    "disk", "does", "done", "door", "dose", "down", "draw", "drew", "drop",
    "drug", "dual", "duke", "dust", "duty", "each", "earn", "ease", "east",
    "easy", "edge", "else", "even", "ever", "exit", "face", "fact", "fail",
    "fair", "fall", "farm", "fast", "fate", "fear", "feed", "feel", "feet",
    "fell", "felt", "file", "fill", "film", "find", "fine", "fire", "firm",
    "fish", "five", "flat", "flow", "food", "foot", "form", "fort", "four",
    "free", "from", "fuel", "full", "fund", "gain", "game", "gate", "gave",
    "gear", "gene", "gift", "girl", "give", "glad", "goal", "goes", "gold",
    "golf", "gone", "good", "gray", "grew", "grey", "grow", "gulf", "hair",
    "half", "hall", "hand", "hang", "hard", "harm", "hate", "have", "head",
    "hear", "heat", "held", "hell", "help", "here", "hero", "high", "hill",
    "hire", "hold", "hole", "holy", "home", "hope", "host", "hour", "huge",
    "hung", "hunt", "hurt", "idea", "inch", "into", "iron", "item", "join",
    "joke", "jump", "jury", "just", "keen", "keep", "kept", "kick", "kind",
    "king", "knee", "knew", "know", "lack", "lady", "laid", "lake", "land",
    "lane", "last", "late", "lead", "left", "less", "life", "lift", "like",
    "line", "link", "list", "live", "load", "loan", "lock", "long", "look",
    "lord", "lose", "loss", "lost", "love", "luck", "made", "mail", "main",
    "make", "male", "many", "mark", "mass", "matter", "meal", "mean", "meat",
    "meet", "menu", "mere", "mild", "mile", "milk", "mill", "mind", "mine",
    "miss", "mode", "mood", "moon", "more", "most", "move", "much", "must",
    "name", "navy", "near", "neck", "need", "news", "next", "nice", "nine",
    "none", "nose", "note", "okay", "once", "only", "open", "oral", "over",
    "pace", "pack", "page", "paid", "pain", "pair", "palm", "park", "part",
    "pass", "past", "path", "peak", "pick", "pile", "pink", "pipe", "plan",
    "play", "plot", "plug", "plus", "poll", "pool", "poor", "port", "post",
    "pull", "pure", "push", "race", "rail", "rain", "rank", "rare", "rate",
    "read", "real", "rear", "rely", "rent", "rest", "rice", "rich", "ride",
    "ring", "rise", "risk", "road", "rock", "role", "roll", "roof", "room",
    "root", "rose", "rule", "rush", "safe", "said", "sake", "sale", "salt",
    "same", "sand", "save", "seat", "seed", "seek", "seem", "seen", "self",
    "sell", "send", "sent", "ship", "shop", "shot", "show", "shut", "sick",
    "side", "sign", "site", "size", "skin", "slip", "slow", "snow", "soft",
    "soil", "sold", "sole", "some", "song", "soon", "sort", "soul", "spot",
    "star", "stay", "step", "stop", "such", "suit", "sure", "take", "tale",
    "talk", "tall", "tank", "tape", "task", "team", "tech", "tell", "tend",
    "term", "test", "text", "than", "that", "them", "then", "they", "thin",
    "this", "thus", "till", "time", "tiny", "told", "tone", "tool", "tour",
    "town", "tree", "trip", "true", "tune", "turn", "twin", "type", "unit",
    "upon", "used", "user", "vary", "vast", "very", "vice", "view", "vote",
    "wage", "wait", "wake", "walk", "wall", "want", "ward", "warm", "wash",
    "wave", "ways", "weak", "wear", "week", "well", "went", "were", "west",
    "what", "when", "whom", "wide", "wife", "wild", "will", "wind", "wine",
    "wing", "wire", "wise", "wish", "with", "wood", "word", "wore", "work",
    "yard", "yeah", "year", "your", "zero", "zone", "input", "output", "model",
    "layer", "graph", "node", "value", "state", "event", "query", "cache",
    "store", "queue", "token", "stream", "parser", "server", "client", "driver",
    "filter", "buffer", "signal", "sensor", "motor", "power", "energy",
    "budget", "design", "review", "report", "summary", "sample", "result",
};

}  // namespace svc
