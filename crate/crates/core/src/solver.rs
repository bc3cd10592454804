// SPDX-License-Identifier: Apache-2.0

//! Driving an external SMT-LIB solver over stdin/stdout pipes.
//!
//! A [`Session`] enables `:print-success` during the handshake, so every
//! command yields exactly one reply and replies can be framed as complete
//! S-expressions. Output is read by a background thread and handed over a
//! channel, which lets every read honour [`SolverConfig::read_timeout`].

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Child, ChildStdin, Command as Process, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::emit::{Command, Declarations, EmitError, Signature};
use crate::model::Model;
use crate::reader::{error_message, parse_check_sat, parse_model, parse_values, CheckStatus};
use crate::sexpr::{parse_all, parse_one, ReadError};
use crate::term::{ConstVal, Term, TermError};

/// Environment variable holding a default solver command line.
pub const SOLVER_ENV: &str = "SMTKIT_SOLVER";

const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);
const EXIT_GRACE: Duration = Duration::from_millis(500);

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("could not start solver `{command}`: {source}")]
    SpawnFailure {
        command: String,
        #[source]
        source: io::Error,
    },
    #[error("solver did not acknowledge the handshake")]
    HandshakeTimeout,
    #[error("no reply from solver within {0:?}")]
    ReadTimeout(Duration),
    #[error("solver error: {message}")]
    Solver { message: String, stderr: String },
    #[error("solver exited unexpectedly")]
    Exited { stderr: String },
    #[error("session is closed")]
    DeadSession,
    #[error("cannot pop {requested} frame(s) at depth {depth}")]
    StackUnderflow { depth: usize, requested: u32 },
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("push/pop count must be positive")]
    ZeroCount,
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl DriverError {
    /// Stderr captured from the solver, when available.
    pub fn stderr(&self) -> Option<&str> {
        match self {
            DriverError::Solver { stderr, .. } | DriverError::Exited { stderr } => {
                Some(stderr).filter(|s| !s.is_empty()).map(String::as_str)
            }
            _ => None,
        }
    }
}

pub type Result<T, E = DriverError> = std::result::Result<T, E>;

/// One command/reply pair as seen on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub command: String,
    pub reply: String,
}

/// Shared log of every exchange made by sessions configured with it.
#[derive(Debug, Clone, Default)]
pub struct Transcript(Arc<Mutex<Vec<Exchange>>>);

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> Vec<Exchange> {
        self.0.lock().unwrap().clone()
    }

    pub fn len(&self) -> usize {
        self.0.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn push(&self, command: &str, reply: &str) {
        self.0.lock().unwrap().push(Exchange {
            command: command.to_owned(),
            reply: reply.to_owned(),
        });
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub command: String,
    pub args: Vec<String>,
    pub read_timeout: Duration,
    /// Sent as `(set-logic ...)` after the handshake.
    pub logic: Option<String>,
    pub transcript: Option<Transcript>,
}

impl SolverConfig {
    pub fn new(command: impl Into<String>, args: &[&str]) -> Self {
        SolverConfig {
            command: command.into(),
            args: args.iter().map(|a| (*a).to_owned()).collect(),
            read_timeout: DEFAULT_TIMEOUT,
            logic: None,
            transcript: None,
        }
    }

    pub fn z3() -> Self {
        Self::new("z3", &["-smt2", "-in"])
    }

    pub fn cvc5() -> Self {
        Self::new("cvc5", &["--interactive", "--produce-models"])
    }

    /// A command line split on whitespace, e.g. `"z3 -smt2 -in"`.
    pub fn from_command_line(line: &str) -> Result<Self> {
        let mut words = line.split_whitespace();
        let command = words
            .next()
            .ok_or_else(|| DriverError::InvalidConfig("empty solver command".to_owned()))?;
        let args: Vec<&str> = words.collect();
        Ok(Self::new(command, &args))
    }

    /// The command line in [`SOLVER_ENV`], if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var(SOLVER_ENV)
            .ok()
            .and_then(|line| Self::from_command_line(&line).ok())
    }

    /// [`SolverConfig::from_env`], falling back to Z3.
    pub fn default_solver() -> Self {
        Self::from_env().unwrap_or_else(Self::z3)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.read_timeout = timeout;
        self
    }

    pub fn with_logic(mut self, logic: impl Into<String>) -> Self {
        self.logic = Some(logic.into());
        self
    }

    pub fn with_transcript(mut self, transcript: Transcript) -> Self {
        self.transcript = Some(transcript);
        self
    }

    /// Whether the command resolves to an executable file.
    pub fn is_available(&self) -> bool {
        find_executable(&self.command).is_some()
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::default_solver()
    }
}

pub fn find_executable(command: &str) -> Option<PathBuf> {
    let path = Path::new(command);
    if path.components().count() > 1 {
        return path.is_file().then(|| path.to_path_buf());
    }
    std::env::var_os("PATH").and_then(|paths| {
        std::env::split_paths(&paths)
            .map(|dir| dir.join(command))
            .find(|candidate| candidate.is_file())
    })
}

/// Result of a satisfiability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    /// Present only when the status is `Sat` and the model was retrieved.
    pub model: Option<Model>,
    /// Set when the model could not be retrieved after a `sat` answer.
    pub error: Option<ReadError>,
}

impl CheckOutcome {
    pub fn status(status: CheckStatus) -> Self {
        CheckOutcome {
            status,
            model: None,
            error: None,
        }
    }

    pub fn sat(model: Model) -> Self {
        CheckOutcome {
            status: CheckStatus::Sat,
            model: Some(model),
            error: None,
        }
    }

    pub fn is_sat(&self) -> bool {
        self.status == CheckStatus::Sat
    }
}

/// Kills a session's solver from outside the owning thread. Reads pending
/// on the session then fail with [`DriverError::DeadSession`].
#[derive(Debug, Clone)]
pub struct KillHandle {
    child: Arc<Mutex<Child>>,
    killed: Arc<AtomicBool>,
}

impl KillHandle {
    pub fn kill(&self) {
        self.killed.store(true, Ordering::SeqCst);
        let mut child = self.child.lock().unwrap();
        let _ = child.kill();
        let _ = child.wait();
    }
}

/// A live solver process with an assertion stack.
///
/// Declarations are tracked per stack frame so that popping a frame also
/// forgets the symbols declared inside it.
pub struct Session {
    child: Arc<Mutex<Child>>,
    stdin: Option<ChildStdin>,
    output: Receiver<Vec<u8>>,
    pending: Vec<u8>,
    stderr: Arc<Mutex<String>>,
    frames: Vec<Declarations>,
    alive: bool,
    killed: Arc<AtomicBool>,
    timeout: Duration,
    transcript: Option<Transcript>,
    syncs: u64,
}

impl fmt::Debug for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Session")
            .field("alive", &self.alive)
            .field("stack_depth", &self.stack_depth())
            .finish_non_exhaustive()
    }
}

fn spawn_reader<R: Read + Send + 'static>(mut source: R) -> Receiver<Vec<u8>> {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let mut buf = [0u8; 8192];
        loop {
            match source.read(&mut buf) {
                Ok(0) | Err(_) => break,
                Ok(n) => {
                    if tx.send(buf[..n].to_vec()).is_err() {
                        break;
                    }
                }
            }
        }
    });
    rx
}

fn spawn_stderr_collector<R: Read + Send + 'static>(mut source: R) -> Arc<Mutex<String>> {
    let sink = Arc::new(Mutex::new(String::new()));
    let writer = Arc::clone(&sink);
    thread::spawn(move || {
        let mut buf = [0u8; 4096];
        while let Ok(n) = source.read(&mut buf) {
            if n == 0 {
                break;
            }
            writer
                .lock()
                .unwrap()
                .push_str(&String::from_utf8_lossy(&buf[..n]));
        }
    });
    sink
}

/// Length of the first complete reply in `buf` (leading whitespace
/// included), or `None` if more output is needed.
fn reply_len(buf: &[u8]) -> Option<usize> {
    let start = buf.iter().position(|b| !b.is_ascii_whitespace())?;
    let mut depth = 0usize;
    let mut i = start;
    while i < buf.len() {
        match buf[i] {
            b'(' => depth += 1,
            b')' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            b'"' => {
                // string literal with "" escapes
                i += 1;
                loop {
                    match buf.get(i) {
                        None => return None,
                        Some(b'"') if buf.get(i + 1) == Some(&b'"') => i += 2,
                        Some(b'"') if buf.get(i + 1).is_none() => return None,
                        Some(b'"') => break,
                        Some(_) => i += 1,
                    }
                }
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            b'|' => {
                i += 1 + buf[i + 1..].iter().position(|&b| b == b'|')?;
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            b if b.is_ascii_whitespace() && depth == 0 => return Some(i),
            _ => {}
        }
        i += 1;
    }
    None
}

pub fn open_session(config: &SolverConfig) -> Result<Session> {
    Session::open(config)
}

impl Session {
    pub fn open(config: &SolverConfig) -> Result<Session> {
        if config.command.is_empty() {
            return Err(DriverError::InvalidConfig(
                "empty solver command".to_owned(),
            ));
        }
        let mut child = Process::new(&config.command)
            .args(&config.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|source| DriverError::SpawnFailure {
                command: config.command.clone(),
                source,
            })?;
        let stdin = child.stdin.take();
        let output = spawn_reader(child.stdout.take().expect("piped stdout"));
        let stderr = spawn_stderr_collector(child.stderr.take().expect("piped stderr"));
        let mut session = Session {
            child: Arc::new(Mutex::new(child)),
            stdin,
            output,
            pending: Vec::new(),
            stderr,
            frames: vec![Declarations::new()],
            alive: true,
            killed: Arc::new(AtomicBool::new(false)),
            timeout: config.read_timeout,
            transcript: config.transcript.clone(),
            syncs: 0,
        };
        match session.expect_success("(set-option :print-success true)") {
            Err(DriverError::ReadTimeout(_)) => return Err(DriverError::HandshakeTimeout),
            other => other?,
        }
        session.expect_success("(set-option :produce-models true)")?;
        if let Some(logic) = &config.logic {
            session.expect_success(&Command::SetLogic(logic.clone()).to_string())?;
        }
        Ok(session)
    }

    pub fn is_alive(&self) -> bool {
        self.alive && !self.killed.load(Ordering::SeqCst)
    }

    pub fn stack_depth(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn kill_handle(&self) -> KillHandle {
        KillHandle {
            child: Arc::clone(&self.child),
            killed: Arc::clone(&self.killed),
        }
    }

    /// Every symbol declared in the live frames.
    pub fn declarations(&self) -> Declarations {
        let mut all = Declarations::new();
        for (name, sig) in self.frames.iter().flat_map(Declarations::iter) {
            let _ = all.insert(name, sig.clone());
        }
        all
    }

    fn lookup(&self, name: &str) -> Option<&Signature> {
        self.frames.iter().rev().find_map(|f| f.get(name))
    }

    fn ensure_alive(&self) -> Result<()> {
        if self.is_alive() {
            Ok(())
        } else {
            Err(DriverError::DeadSession)
        }
    }

    fn captured_stderr(&self) -> String {
        self.stderr.lock().unwrap().clone()
    }

    fn mark_dead(&mut self) {
        self.alive = false;
        self.stdin = None;
    }

    fn terminate(&mut self) {
        self.mark_dead();
        let mut child = self.child.lock().unwrap();
        let _ = child.kill();
        let _ = child.wait();
    }

    fn write_line(&mut self, text: &str) -> Result<()> {
        self.ensure_alive()?;
        let stdin = self.stdin.as_mut().ok_or(DriverError::DeadSession)?;
        let written = stdin
            .write_all(text.as_bytes())
            .and_then(|_| stdin.write_all(b"\n"))
            .and_then(|_| stdin.flush());
        if let Err(e) = written {
            self.mark_dead();
            return Err(if e.kind() == io::ErrorKind::BrokenPipe {
                DriverError::Exited {
                    stderr: self.captured_stderr(),
                }
            } else {
                DriverError::Io(e)
            });
        }
        Ok(())
    }

    /// Blocks until `done(pending)` reports a split point or the deadline
    /// passes.
    fn read_until(&mut self, done: impl Fn(&[u8]) -> Option<usize>) -> Result<Vec<u8>> {
        let deadline = Instant::now() + self.timeout;
        loop {
            if let Some(n) = done(&self.pending) {
                let rest = self.pending.split_off(n);
                return Ok(std::mem::replace(&mut self.pending, rest));
            }
            let remaining = deadline.saturating_duration_since(Instant::now());
            match self.output.recv_timeout(remaining) {
                Ok(chunk) => self.pending.extend_from_slice(&chunk),
                Err(RecvTimeoutError::Timeout) => {
                    self.terminate();
                    return Err(DriverError::ReadTimeout(self.timeout));
                }
                Err(RecvTimeoutError::Disconnected) => {
                    let killed = self.killed.load(Ordering::SeqCst);
                    self.terminate();
                    return Err(if killed {
                        DriverError::DeadSession
                    } else {
                        DriverError::Exited {
                            stderr: self.captured_stderr(),
                        }
                    });
                }
            }
        }
    }

    /// Sends one command and returns its reply, trimmed.
    fn exchange(&mut self, command: &str) -> Result<String> {
        self.write_line(command)?;
        let raw = self.read_until(reply_len)?;
        let reply = String::from_utf8_lossy(&raw).trim().to_owned();
        if let Some(t) = &self.transcript {
            t.push(command, &reply);
        }
        Ok(reply)
    }

    fn solver_error(&self, message: String) -> DriverError {
        DriverError::Solver {
            message,
            stderr: self.captured_stderr(),
        }
    }

    fn expect_success(&mut self, command: &str) -> Result<()> {
        let reply = self.exchange(command)?;
        match reply.as_str() {
            "success" => Ok(()),
            _ => Err(
                match parse_one(&reply).ok().as_ref().and_then(error_message) {
                    Some(msg) => self.solver_error(msg),
                    None => ReadError::UnrecognizedResponse(reply).into(),
                },
            ),
        }
    }

    /// Declares any symbols of `ts` not yet declared in a live frame, then
    /// asserts each term.
    pub fn assert_terms(&mut self, ts: &[Term]) -> Result<()> {
        self.ensure_alive()?;
        if let Some(bad) = ts.iter().find(|t| !t.sort().is_bool()) {
            return Err(EmitError::NonBoolAssert(bad.sort()).into());
        }
        let mut wanted = Declarations::new();
        for t in ts {
            wanted.collect(t)?;
        }
        let mut fresh = Vec::new();
        for (name, sig) in wanted.iter() {
            match self.lookup(name) {
                Some(prev) if prev == sig => {}
                Some(prev) => {
                    return Err(EmitError::SortConflict {
                        name: name.to_owned(),
                        first: prev.to_string(),
                        second: sig.to_string(),
                    }
                    .into())
                }
                None => fresh.push((name.to_owned(), sig.clone())),
            }
        }
        for (name, sig) in fresh {
            let cmd = Command::DeclareFun {
                name: name.clone(),
                args: sig.args.clone(),
                result: sig.result,
            };
            self.expect_success(&cmd.to_string())?;
            self.frames
                .last_mut()
                .expect("base frame")
                .insert(&name, sig)?;
        }
        for t in ts {
            self.expect_success(&Command::Assert(t.clone()).to_string())?;
        }
        Ok(())
    }

    pub fn push(&mut self, n: u32) -> Result<()> {
        self.ensure_alive()?;
        if n == 0 {
            return Err(DriverError::ZeroCount);
        }
        self.expect_success(&Command::Push(n).to_string())?;
        self.frames
            .extend(std::iter::repeat_with(Declarations::new).take(n as usize));
        Ok(())
    }

    pub fn pop(&mut self, n: u32) -> Result<()> {
        self.ensure_alive()?;
        if n == 0 {
            return Err(DriverError::ZeroCount);
        }
        if n as usize > self.stack_depth() {
            return Err(DriverError::StackUnderflow {
                depth: self.stack_depth(),
                requested: n,
            });
        }
        self.expect_success(&Command::Pop(n).to_string())?;
        let keep = self.frames.len() - n as usize;
        self.frames.truncate(keep);
        Ok(())
    }

    fn check_status(&mut self) -> Result<CheckStatus> {
        let reply = self.exchange(&Command::CheckSat.to_string())?;
        parse_check_sat(&reply).map_err(|e| match e {
            ReadError::SolverError(msg) => self.solver_error(msg),
            other => other.into(),
        })
    }

    /// Checks the current assertions; on `sat` the model is fetched and
    /// parsed. The session stays open.
    pub fn check(&mut self) -> Result<CheckOutcome> {
        self.ensure_alive()?;
        let status = self.check_status()?;
        if status != CheckStatus::Sat {
            return Ok(CheckOutcome::status(status));
        }
        let reply = self.exchange(&Command::GetModel.to_string())?;
        let decls = self.declarations();
        Ok(
            match parse_one(&reply).and_then(|e| parse_model(&e, &decls)) {
                Ok(model) => CheckOutcome::sat(model),
                Err(e) => CheckOutcome {
                    status,
                    model: None,
                    error: Some(e),
                },
            },
        )
    }

    /// Asks for the values of ground or model-dependent terms after a `sat`
    /// answer.
    pub fn get_values(&mut self, ts: &[Term]) -> Result<Vec<ConstVal>> {
        self.ensure_alive()?;
        if ts.is_empty() {
            return Ok(Vec::new());
        }
        let reply = self.exchange(&Command::GetValue(ts.to_vec()).to_string())?;
        let e = parse_one(&reply)?;
        if let Some(msg) = error_message(&e) {
            return Err(self.solver_error(msg));
        }
        let sorts: Vec<_> = ts.iter().map(Term::sort).collect();
        Ok(parse_values(&e, &sorts)?)
    }

    /// Sends arbitrary command text and returns the solver's raw output for
    /// it, uninterpreted.
    ///
    /// The reply is delimited by an `echo` sentinel sent right after the
    /// text, so any number of commands (or none) may be passed.
    pub fn raw_send(&mut self, command_text: &str) -> Result<String> {
        self.ensure_alive()?;
        self.syncs += 1;
        let token = format!("smtkit-sync-{}", self.syncs);
        self.write_line(&format!("{command_text}\n(echo \"{token}\")"))?;
        let needle = token.as_bytes().to_vec();
        let raw = self.read_until(|buf| {
            let at = buf
                .windows(needle.len())
                .position(|w| w == needle.as_slice())?;
            let end = buf[at..].iter().position(|&b| b == b'\n')?;
            Some(at + end + 1)
        })?;
        let text = String::from_utf8_lossy(&raw);
        let before = &text[..text.find(&token).expect("sentinel present")];
        let reply = before
            .trim_end()
            .strip_suffix('"')
            .unwrap_or(before)
            .trim()
            .to_owned();
        if let Some(t) = &self.transcript {
            t.push(command_text, &reply);
        }
        Ok(reply)
    }

    /// Sends `(exit)`, waits briefly, then kills the process. Idempotent and
    /// best-effort.
    pub fn close(&mut self) {
        if !self.alive {
            return;
        }
        if !self.killed.load(Ordering::SeqCst) {
            let _ = self.write_line(&Command::Exit.to_string());
        }
        self.mark_dead();
        let deadline = Instant::now() + EXIT_GRACE;
        let mut child = self.child.lock().unwrap();
        while Instant::now() < deadline {
            if matches!(child.try_wait(), Ok(Some(_))) {
                return;
            }
            thread::sleep(Duration::from_millis(5));
        }
        let _ = child.kill();
        let _ = child.wait();
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        self.close();
    }
}

pub fn close_session(s: &mut Session) {
    s.close();
}

pub fn assert_terms(s: &mut Session, ts: &[Term]) -> Result<()> {
    s.assert_terms(ts)
}

pub fn push(s: &mut Session, n: u32) -> Result<()> {
    s.push(n)
}

pub fn pop(s: &mut Session, n: u32) -> Result<()> {
    s.pop(n)
}

pub fn check_session(s: &mut Session) -> Result<CheckOutcome> {
    s.check()
}

pub fn raw_send(s: &mut Session, command_text: &str) -> Result<String> {
    s.raw_send(command_text)
}

/// One-shot check of the conjunction of `ts` in a fresh solver process.
pub fn check(ts: &[Term], config: &SolverConfig) -> Result<CheckOutcome> {
    let mut session = Session::open(config)?;
    session.assert_terms(ts)?;
    let outcome = session.check();
    session.close();
    outcome
}

/// Runs an SMT-LIB file through a fresh solver and returns the status of its
/// last `check-sat`, appending one if the file has none.
pub fn check_file(path: impl AsRef<Path>, config: &SolverConfig) -> Result<CheckStatus> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => DriverError::FileNotFound(path.to_path_buf()),
        _ => DriverError::Io(e),
    })?;
    check_script(&text, config)
}

/// [`check_file`] on in-memory script text.
pub fn check_script(text: &str, config: &SolverConfig) -> Result<CheckStatus> {
    let commands = parse_all(text)?;
    let mut session = Session::open(config)?;
    let mut last = None;
    for cmd in &commands {
        match cmd.head() {
            Some("exit") => continue,
            Some("check-sat") => last = Some(session.check_status()?),
            _ => {
                let reply = session.exchange(&cmd.to_string())?;
                if let Some(msg) = parse_one(&reply).ok().as_ref().and_then(error_message) {
                    return Err(session.solver_error(msg));
                }
            }
        }
    }
    let status = match last {
        Some(s) => s,
        None => session.check_status()?,
    };
    session.close();
    Ok(status)
}
