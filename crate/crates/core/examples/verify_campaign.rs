//! Runs two verification campaigns, one over a grid and one over seeded random
//! graphs, and prints their summaries.

use sfl::campaign::{run_campaign, Campaign, CampaignConfig, Grid};

fn main() -> sfl::Result<()> {
    let mut grid = Grid::new();
    grid.set('p', "2..3".parse()?).set('q', "1..2".parse()?).set('n', "1..20".parse()?);
    let config = CampaignConfig {
        grid,
        ..CampaignConfig::default()
    };
    let report = run_campaign(Campaign::Structure, &config)?;
    println!("{}: {:?}", report.campaign, report.summary);

    let config = CampaignConfig {
        random: Some(50),
        seed: 7,
        ..CampaignConfig::default()
    };
    let report = run_campaign(Campaign::MisBounds, &config)?;
    println!("{} (seed 7): {:?}", report.campaign, report.summary);
    for row in report.rows.iter().take(3) {
        println!("  {} : {} {} {} -> {:?}", row.check, row.lhs, row.relation, row.rhs, row.status);
    }
    Ok(())
}
