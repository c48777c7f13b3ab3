fn main() { criterion::criterion_main!(); }
