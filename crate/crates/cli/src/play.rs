//! Text-mode play against the solver.

use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use trailtrap::{Graph, Move, PartialGame, Player, Solver};

use crate::Side;

fn parse_move(line: &str, s: &PartialGame) -> Result<Move, String> {
    let nums: Vec<usize> = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("not a vertex: {t:?}")))
        .collect::<Result<_, _>>()?;
    let [u, v] = nums[..] else {
        return Err("enter a move as `u v`".into());
    };
    let m = Move::between(s.graph(), u, v).map_err(|e| e.to_string())?;
    s.check(m).map_err(|e| e.to_string())?;
    Ok(m)
}

/// Runs one game. The engine plays a winning move whenever it has one.
pub fn session(g: &Graph, solver: Solver, human: Side, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
    let me = if human == Side::P1 { Player::P1 } else { Player::P2 };
    let mut s = PartialGame::new(g);
    writeln!(out, "{} vertices, {} edges. You are {me}.", g.n(), g.m())?;
    let mut line = String::new();
    while !s.is_terminal() {
        if s.to_move() == me {
            write!(out, "your move> ")?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                bail!("input ended before the game did");
            }
            match parse_move(line.trim(), &s) {
                Ok(m) => s.apply(m)?,
                Err(e) => writeln!(out, "illegal: {e}")?,
            }
        } else {
            let Some((m, wins)) = solver.best_move(&s)? else { break };
            s.apply(m)?;
            writeln!(out, "engine plays {m}{}", if wins { "" } else { " (no winning move)" })?;
        }
    }
    let loser = s.loser()?;
    writeln!(out, "{loser} cannot move. {} wins.", loser.other())?;
    Ok(())
}
