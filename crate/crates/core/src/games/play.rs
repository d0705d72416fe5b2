//! Human-versus-engine play over stdin/stdout, with replayable transcripts.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::arena::{Arena, Counter};
use crate::games::solver::{Search, SolveOptions, Winner};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Exists,
    Forall,
}

impl Side {
    fn winner(self) -> Winner {
        match self {
            Side::Exists => Winner::Exists,
            Side::Forall => Winner::Forall,
        }
    }

    fn other(self) -> Side {
        match self {
            Side::Exists => Side::Forall,
            Side::Forall => Side::Exists,
        }
    }
}

/// One choice, as an index into the sorted list of legal options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ply {
    pub side: Side,
    pub choice: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: usize,
    pub human: Side,
    pub plies: Vec<Ply>,
    pub winner: Winner,
    pub resigned: bool,
    pub final_position: String,
}

enum Input {
    Pick(usize),
    Resign,
}

fn ask(input: &mut dyn BufRead, out: &mut dyn Write, options: &[String], who: &str) -> Result<Input> {
    for (i, o) in options.iter().enumerate() {
        writeln!(out, "  [{i}] {o}")?;
    }
    loop {
        write!(out, "{who}> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(Input::Resign);
        }
        let line = line.trim();
        if line == "resign" {
            return Ok(Input::Resign);
        }
        match line.parse::<usize>() {
            Ok(i) if i < options.len() => return Ok(Input::Pick(i)),
            _ => writeln!(out, "illegal choice '{line}': enter 0..{} or 'resign'", options.len().saturating_sub(1))?,
        }
    }
}

/// Plays one game with the human on `human`'s side and the engine playing
/// optimally (least winning choice, else the first legal one).
pub fn play_interactive<A: Arena>(
    arena: &A,
    human: Side,
    opts: &SolveOptions,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Transcript> {
    let rounds = arena.rounds();
    let mut engine = Search::new(arena, opts.memo, opts.budget);
    let mut counter = Counter::new(opts.budget);
    let mut plies = Vec::new();
    let finish = |plies: Vec<Ply>, winner: Side, resigned: bool, pos: String| Transcript {
        rounds,
        human,
        plies,
        winner: winner.winner(),
        resigned,
        final_position: pos,
    };

    let openings = arena.openings(&mut counter)?;
    if openings.is_empty() {
        writeln!(out, "no opening network exists; forall wins")?;
        return Ok(finish(plies, Side::Forall, false, String::new()));
    }
    writeln!(out, "opening ({} choices)", openings.len())?;
    let pick = if human == Side::Exists {
        let shown: Vec<String> = openings.iter().map(|p| arena.show_pos(p)).collect();
        match ask(input, out, &shown, "exists")? {
            Input::Pick(i) => i,
            Input::Resign => return Ok(finish(plies, Side::Forall, true, String::new())),
        }
    } else {
        let mut best = (0, 0);
        for (i, p) in openings.iter().enumerate() {
            let r = engine.survival(p, rounds)?;
            if r > best.1 {
                best = (i, r);
            }
        }
        best.0
    };
    let mut pos = openings[pick].clone();
    writeln!(out, "exists opens with {}", arena.show_pos(&pos))?;
    plies.push(Ply {
        side: Side::Exists,
        choice: pick,
        text: arena.show_pos(&pos),
    });

    for left in (1..=rounds).rev() {
        writeln!(out, "round {} of {rounds}", rounds - left + 1)?;
        let moves = arena.forall_moves(&pos)?;
        if moves.is_empty() {
            break;
        }
        let mi = if human == Side::Forall {
            let shown: Vec<String> = moves.iter().map(|m| arena.show_move(m)).collect();
            match ask(input, out, &shown, "forall")? {
                Input::Pick(i) => i,
                Input::Resign => return Ok(finish(plies, Side::Exists, true, arena.show_pos(&pos))),
            }
        } else {
            match engine.winning_forall_move(&pos, left)? {
                Some(m) => moves.binary_search(&m).map_err(|_| Error::Verification("engine move is illegal".into()))?,
                None => 0,
            }
        };
        let m = moves[mi].clone();
        writeln!(out, "forall: {}", arena.show_move(&m))?;
        plies.push(Ply {
            side: Side::Forall,
            choice: mi,
            text: arena.show_move(&m),
        });

        let answers = arena.responses(&pos, &m, &mut counter)?;
        if answers.is_empty() {
            writeln!(out, "exists has no legal answer; forall wins")?;
            return Ok(finish(plies, Side::Forall, false, arena.show_pos(&pos)));
        }
        let ai = if human == Side::Exists {
            let shown: Vec<String> = answers.iter().map(|p| arena.show_pos(p)).collect();
            match ask(input, out, &shown, "exists")? {
                Input::Pick(i) => i,
                Input::Resign => return Ok(finish(plies, Side::Forall, true, arena.show_pos(&pos))),
            }
        } else {
            match engine.winning_answer(&pos, &m, left)? {
                Some(q) => answers.binary_search(&q).map_err(|_| Error::Verification("engine answer is illegal".into()))?,
                None => 0,
            }
        };
        pos = answers[ai].clone();
        writeln!(out, "exists: {}", arena.show_pos(&pos))?;
        plies.push(Ply {
            side: Side::Exists,
            choice: ai,
            text: arena.show_pos(&pos),
        });
    }
    writeln!(out, "exists survives {rounds} rounds")?;
    Ok(finish(plies, Side::Exists, false, arena.show_pos(&pos)))
}

/// Replays a transcript's choices against the arena, checks that every ply
/// is legal, its text matches and the recorded outcome follows, and returns
/// the final network.
pub fn replay<A: Arena>(arena: &A, t: &Transcript, budget: u64) -> Result<String> {
    let mut counter = Counter::new(budget);
    let bad = |k: usize, why: &str| Error::IllegalMove(format!("ply {k}: {why}"));
    let mut plies = t.plies.iter().enumerate();
    let openings = arena.openings(&mut counter)?;
    let Some((k, first)) = plies.next() else {
        let ok = t.winner == Winner::Forall && (openings.is_empty() || t.resigned);
        return if ok && t.final_position.is_empty() {
            Ok(String::new())
        } else {
            Err(bad(0, "empty transcript"))
        };
    };
    let mut pos = openings.get(first.choice).ok_or_else(|| bad(k, "no such opening"))?.clone();
    if arena.show_pos(&pos) != first.text {
        return Err(bad(k, "opening differs"));
    }
    let mut last = Side::Exists;
    let mut dead = false;
    let mut rounds = 0;
    while let Some((k, f)) = plies.next() {
        let moves = arena.forall_moves(&pos)?;
        let m = moves.get(f.choice).ok_or_else(|| bad(k, "no such move"))?;
        if f.side != Side::Forall || arena.show_move(m) != f.text {
            return Err(bad(k, "move differs"));
        }
        rounds += 1;
        let answers = arena.responses(&pos, m, &mut counter)?;
        last = Side::Forall;
        let Some((k, e)) = plies.next() else {
            dead = answers.is_empty();
            break;
        };
        let q = answers.get(e.choice).ok_or_else(|| bad(k, "no such answer"))?;
        if e.side != Side::Exists || arena.show_pos(q) != e.text {
            return Err(bad(k, "answer differs"));
        }
        pos = q.clone();
        last = Side::Exists;
    }
    let expected = if dead {
        Some(Side::Forall)
    } else if last == Side::Exists && (rounds == t.rounds || arena.forall_moves(&pos)?.is_empty()) {
        Some(Side::Exists)
    } else {
        None
    };
    let ok = match expected {
        Some(w) => !t.resigned && w.winner() == t.winner,
        None => t.resigned && t.winner == t.human.other().winner(),
    };
    let last_pos = arena.show_pos(&pos);
    if !ok || last_pos != t.final_position {
        return Err(bad(t.plies.len(), "recorded outcome does not follow"));
    }
    Ok(last_pos)
}
