use interval_maxcut::solver::suites::*;
use interval_maxcut::coord::int;
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let l1 = suite_three_block(&[6, 8, 10], 2).unwrap();
    println!("3block: {} lines, all pass: {}, {:?}", l1.len(), all_pass(&l1), t.elapsed());
    let t = Instant::now();
    let rbs: Vec<(u32,u32)> = vec![(0,0),(1,0),(2,0),(1,1),(2,1),(3,1),(2,2),(0,1),(0,2),(1,2),(1,3),(3,2),(3,3),(2,3)];
    let l3 = suite_edge(&[3, 5, 8], &rbs).unwrap();
    println!("edge: {} lines, all pass: {}, {:?}", l3.len(), all_pass(&l3), t.elapsed());
    let t = Instant::now();
    let l6 = suite_switch(&[(5, 3), (7, 4)], &[(0,0),(1,0),(2,0),(2,1),(3,1),(0,1),(0,2),(1,2)]).unwrap();
    println!("switch: {} lines, all pass: {}, {:?}", l6.len(), all_pass(&l6), t.elapsed());
    let t = Instant::now();
    let lv = suite_vertex(&[7, 9], &[(0,0),(1,0),(2,0),(1,1),(2,1),(0,1),(0,2),(1,2)]).unwrap();
    println!("vertex: {} lines, all pass: {}, {:?}", lv.len(), all_pass(&lv), t.elapsed());
    let t = Instant::now();
    let ll = suite_link(&[(3, 9), (10, 9)], &[(0,0),(1,0),(2,0),(1,1),(2,1),(0,2)]).unwrap();
    println!("link: {} lines, all pass: {}, {:?}", ll.len(), all_pass(&ll), t.elapsed());
    let t = Instant::now();
    let lc = suite_compress(int(40)).unwrap();
    println!("compress: {} lines, all pass: {}, {:?}", lc.len(), all_pass(&lc), t.elapsed());
    for l in l1.iter().chain(&l3).chain(&l6).chain(&lv).chain(&ll).chain(&lc) {
        if !l.pass { println!("FAIL: {l}"); }
    }
}
