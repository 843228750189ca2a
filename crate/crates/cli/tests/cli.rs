//! The binary end to end: answers, exit statuses and play sessions.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trailtrap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The game may end before all input is read.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn solve_complete_graphs() {
    let o = run(&["solve", "--family", "k_n:4"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("winner: P1"));

    let o = run(&["--json", "solve", "--family", "k_n:5"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["winner"], "P2");
    assert!(v["witness"].is_null());
    assert!(v["meta"]["nodes"].as_u64().unwrap() > 0);
    assert!(v["meta"]["budget"].is_null());

    let o = run(&["--json", "solve", "--graph6", "C~"], "");
    assert_eq!(json(&o)["winner"], "P1");
}

#[test]
fn census_of_five_vertices() {
    let o = run(&["census", "--n", "5"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("17 / 21 P2-win"));

    let o = run(&["--json", "--jobs", "2", "census", "--n", "4", "--emit-p1-list"], "");
    let v = json(&o);
    assert_eq!(v["counts"]["connected"], 6);
    assert_eq!(v["counts"]["p2_win"], 4);
    assert_eq!(v["counts"]["p1_win_list"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_one() {
    let o = run(&["solve", "--edges", "missing.txt"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.txt"));
    for args in [
        &["solve"][..],
        &["solve", "--family", "k_n:4", "--graph6", "C~"],
        &["solve", "--family", "wheel:5"],
        &["solve", "--graph6", "C"],
        &["--budget", "0", "solve", "--family", "k_n:4"],
        &["frobnicate"],
        &["verify", "--strategy", "grid", "--params", "6"],
    ] {
        assert_eq!(run(args, "").status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn budget_exceeded_exits_two() {
    let o = run(&["--budget", "5", "solve", "--family", "k_n:6"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--budget", "5", "census", "--n", "5"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tree_and_verify() {
    let claw = tmp("claw.txt");
    std::fs::write(&claw, "4 3\n0 1\n0 2\n0 3\n").unwrap();
    let o = run(&["--json", "tree", "--edges", claw.to_str().unwrap(), "--explain"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["winner"], "P1");
    assert!(json(&o)["report"]["explanation"]["witness"].is_string());
    let o = run(&["tree", "--family", "path:5"], "");
    assert!(stdout(&o).contains("winner: P2"));

    for args in [
        &["verify", "--strategy", "grid", "--params", "5"][..],
        &["verify", "--strategy", "prism", "--params", "5"],
        &["verify", "--strategy", "copycat", "--params", "grid:3,3"],
        &["verify", "--strategy", "copycat", "--params", "k_pq:2,3", "--map", "1,0,4,3,2"],
        &["verify", "--strategy", "k3q", "--params", "13", "--games", "300"],
    ] {
        let o = run(args, "");
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["--json", "verify", "--strategy", "grid", "--params", "5"], "");
    assert_eq!(json(&o)["report"]["verdict"], "verified");
}

#[test]
fn gadget_constructions() {
    let host = tmp("cube.txt");
    let cube = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7)];
    let mut text = format!("8 {}\n", cube.len());
    for (u, v) in cube {
        text += &format!("{u} {v}\n");
    }
    std::fs::write(&host, text).unwrap();
    let h = host.to_str().unwrap();

    let out = tmp("cube_gadget.txt");
    let o = run(&["--json", "gadget", "--type", "edge", "--host", h, "--edge", "0,1", "--out", out.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["report"]["vertices"], 42);
    assert_eq!(v["report"]["edges"], 63);
    assert_eq!(v["report"]["anchors"]["x"], 8);
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("42 63"));

    let o = run(&["--json", "gadget", "--type", "reduction", "--host", h, "--vertex", "0", "--check"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["vertices"], 28);
    assert_eq!(v["report"]["check"]["agree"], true);

    let o = run(&["--budget", "10", "gadget", "--type", "reduction", "--host", h, "--vertex", "0", "--check"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gadget", "--type", "pendant", "--host", h], "");
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["gadget", "--type", "edge", "--host", h, "--edge", "0,7"], "");
    assert_eq!(o.status.code(), Some(1));
}

/// Every sequence of human moves on a small graph, answered by the engine.
fn all_human_lines(family: &str, human: &str, engine_wins_as: &str) {
    use trailtrap::{PartialGame, Player};
    let g = match family {
        "diamond" => trailtrap::Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap(),
        _ => trailtrap::graph::complete(4).unwrap(),
    };
    let me = if human == "p1" { Player::P1 } else { Player::P2 };
    let solver = trailtrap::Solver::default();
    // Depth-first over human choices, replaying the engine through the library
    // to know what the binary will answer.
    let mut stack = vec![Vec::<(usize, usize)>::new()];
    let mut games = 0;
    while let Some(line) = stack.pop() {
        let mut s = PartialGame::new(&g);
        let mut it = line.iter();
        loop {
            if s.is_terminal() {
                break;
            }
            if s.to_move() == me {
                match it.next() {
                    Some(&(u, v)) => s.apply(trailtrap::Move::between(&g, u, v).unwrap()).unwrap(),
                    None => break,
                }
            } else {
                let (m, _) = solver.best_move(&s).unwrap().unwrap();
                s.apply(m).unwrap();
            }
        }
        if !s.is_terminal() {
            for m in s.legal_moves() {
                let mut next = line.clone();
                next.push((m.tail, m.head));
                stack.push(next);
            }
            continue;
        }
        games += 1;
        let input: String = line.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
        let o = run(&["play", "--family", family, "--human", human], &input);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(&format!("{engine_wins_as} wins")), "{input}\n{}", stdout(&o));
    }
    assert!(games > 0);
}

#[test]
fn play_engine_wins_diamond_as_p2() {
    all_human_lines("diamond", "p1", "P2");
}

#[test]
fn play_engine_wins_k4_as_p1() {
    all_human_lines("k_n:4", "p2", "P1");
}

#[test]
fn play_reprompts_on_illegal_moves() {
    let o = run(&["play", "--family", "diamond"], "0 1\n0 1\nhello\n0 3\n5 6\n1 2\n");
    let out = stdout(&o);
    assert_eq!(out.matches("illegal").count(), 4, "{out}");
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("P2 wins"));
}
